#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "blochgeo/export.hpp"

using namespace blochgeo;

namespace {

ExportRecord sample() {
  ExportRecord rec;
  rec.columns = {"theta", "r_bures", "r_sjoqvist"};
  rec.metadata = {{"command", "test"}, {"seed", 7}};
  rec.add_row({0.1, 1.0 / 3.0, std::nullopt});
  rec.add_row({std::nextafter(1.0, 2.0), -2.5e-300, 6.02214076e23});
  return rec;
}

}  // namespace

TEST_CASE("format_double keeps every bit") {
  for (double v : {0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, -0.0}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK_THROWS(format_double(std::numeric_limits<double>::quiet_NaN()));
  CHECK_THROWS(format_double(std::numeric_limits<double>::infinity()));
}

TEST_CASE("CSV round trip") {
  const auto rec = sample();
  std::ostringstream os;
  write_csv(os, rec);
  CHECK(os.str().rfind("theta,r_bures,r_sjoqvist\n", 0) == 0);
  std::istringstream is(os.str());
  const auto back = read_csv(is);
  CHECK(back.columns == rec.columns);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows == rec.rows);
}

TEST_CASE("CSV header present without rows") {
  ExportRecord rec;
  rec.columns = {"a", "b"};
  std::ostringstream os;
  write_csv(os, rec);
  CHECK(os.str() == "a,b\n");
}

TEST_CASE("row width is enforced") {
  ExportRecord rec;
  rec.columns = {"a", "b"};
  CHECK_THROWS(rec.add_row({1.0}));
}

TEST_CASE("JSON round trip") {
  const auto rec = sample();
  const auto doc = to_json(rec);
  CHECK(doc["rows"][0][2].is_null());
  CHECK(doc["metadata"]["seed"] == 7);
  const auto back = from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back.rows == rec.rows);
  CHECK(back.metadata == rec.metadata);
}

TEST_CASE("format by extension") {
  CHECK(format_for_path("out.json") == ExportFormat::Json);
  CHECK(format_for_path("out.csv") == ExportFormat::Csv);
  CHECK(format_for_path("out") == ExportFormat::Csv);
  CHECK_THROWS(write_file("/nonexistent-dir/x.csv", sample()));
}
