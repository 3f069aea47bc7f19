#include "blochgeo/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace blochgeo {

void ExportRecord::add_row(std::vector<std::optional<double>> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite values cannot be exported");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Fields here never contain quotes or newlines; commas in headers get quoted.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const ExportRecord& record) {
  for (std::size_t i = 0; i < record.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_field(record.columns[i]);
  }
  os << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << format_double(*row[i]);
    }
    os << '\n';
  }
}

ExportRecord read_csv(std::istream& is) {
  ExportRecord rec;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("CSV input has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  rec.columns = split_csv_line(line);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::optional<double>> row;
    for (const auto& cell : split_csv_line(line)) {
      if (cell.empty()) {
        row.emplace_back();
        continue;
      }
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::runtime_error("malformed CSV number: " + cell);
      row.emplace_back(v);
    }
    rec.add_row(std::move(row));
  }
  return rec;
}

nlohmann::json to_json(const ExportRecord& record) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : record.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) {
      if (v && std::isfinite(*v)) {
        r.push_back(*v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  return {{"metadata", record.metadata}, {"columns", record.columns}, {"rows", std::move(rows)}};
}

ExportRecord from_json(const nlohmann::json& doc) {
  ExportRecord rec;
  rec.metadata = doc.value("metadata", nlohmann::json::object());
  rec.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& r : doc.at("rows")) {
    std::vector<std::optional<double>> row;
    for (const auto& v : r) {
      if (v.is_null()) {
        row.emplace_back();
      } else {
        row.emplace_back(v.get<double>());
      }
    }
    rec.add_row(std::move(row));
  }
  return rec;
}

ExportFormat format_for_path(const std::string& path) {
  const std::string ext = ".json";
  if (path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return ExportFormat::Json;
  }
  return ExportFormat::Csv;
}

void write_file(const std::string& path, const ExportRecord& record) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  if (format_for_path(path) == ExportFormat::Json) {
    os << to_json(record).dump(2) << '\n';
  } else {
    write_csv(os, record);
  }
  if (!os) throw std::runtime_error("failed writing " + path);
}

}  // namespace blochgeo
