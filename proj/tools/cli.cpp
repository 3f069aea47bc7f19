#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blochgeo/analysis.hpp"
#include "blochgeo/export.hpp"
#include "blochgeo/geodesics.hpp"
#include "blochgeo/rotations.hpp"

namespace blochgeo::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = "1.0.0";

// A check that failed against its tolerance; carries the exit code to use.
struct Breach : std::runtime_error {
  Breach(const std::string& what, int code) : std::runtime_error(what), code(code) {}
  int code;
};

json planar_json(const PlanarState& s) { return {{"r", s.r}, {"theta", s.theta}}; }

json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

MetricKind metric_from(const std::string& name) {
  if (auto k = parse_metric_kind(name)) return *k;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

std::vector<MetricKind> metric_list(const std::string& name) {
  if (name == "all") {
    return {MetricKind::Euclid, MetricKind::Taxicab, MetricKind::Bures, MetricKind::Sjoqvist};
  }
  if (name == "both") return {MetricKind::Bures, MetricKind::Sjoqvist};
  return {metric_from(name)};
}

// "a:b" with both ends finite.
std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("range must look like a:b");
  std::size_t used = 0;
  const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
  const double a = std::stod(lo, &used);
  if (used != lo.size()) throw std::invalid_argument("bad range start '" + lo + "'");
  const double b = std::stod(hi, &used);
  if (used != hi.size()) throw std::invalid_argument("bad range end '" + hi + "'");
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("range ends must be finite");
  return {a, b};
}

json base_metadata(const std::string& command) {
  return {{"command", command}, {"version", kVersion}};
}

// Writes to --out when given. --format overrides the extension.
void maybe_write(const std::string& path, const std::string& format, const ExportRecord& rec) {
  if (path.empty()) return;
  if (format.empty()) {
    write_file(path, rec);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  if (format == "json") {
    os << to_json(rec).dump(2) << '\n';
  } else {
    write_csv(os, rec);
  }
}

// --- distance ------------------------------------------------------------------

struct DistanceArgs {
  std::string metric = "bures";
  std::vector<double> a, b, a3, b3;
  bool wrap_angles = false;
  std::string out, format;
};

json cmd_distance(const DistanceArgs& args) {
  const bool cartesian = !args.a3.empty() || !args.b3.empty();
  const bool planar = !args.a.empty() || !args.b.empty();
  if (cartesian == planar) {
    throw std::invalid_argument("give either --a/--b (r,theta) or --a3/--b3 (px,py,pz)");
  }
  if (cartesian && (args.a3.size() != 3 || args.b3.size() != 3)) {
    throw std::invalid_argument("--a3 and --b3 both need three components");
  }
  if (planar && (args.a.size() != 2 || args.b.size() != 2)) {
    throw std::invalid_argument("--a and --b both need two components r,theta");
  }

  json doc = base_metadata("distance");
  PlanarState a, b;
  std::optional<BlochVector> p1, p2;
  if (cartesian) {
    p1 = BlochVector(args.a3[0], args.a3[1], args.a3[2]);
    p2 = BlochVector(args.b3[0], args.b3[1], args.b3[2]);
    const auto red = reduce_to_xz_plane(*p1, *p2);
    a = red.a;
    b = red.b;
    doc["reduction"] = {{"p1_new", vec_json(red.p1_new.vec())},
                        {"p2_new", vec_json(red.p2_new.vec())},
                        {"theta2_prime", red.theta2_prime},
                        {"phi2_prime", red.phi2_prime}};
  } else {
    a = {args.a[0], args.a[1]};
    b = {args.b[0], args.b[1]};
  }
  const auto convention = args.wrap_angles ? AngleConvention::Wrapped : AngleConvention::AsGiven;
  doc["angle_convention"] = args.wrap_angles ? "wrapped-to-[0,pi]" : "as-given";

  ExportRecord rec;
  rec.columns = {"r_a", "theta_a", "r_b", "theta_b", "distance"};
  rec.metadata = doc;
  json reports = json::array();
  for (auto kind : metric_list(args.metric)) {
    const auto r = distance_report(kind, a, b, convention);
    json item{{"metric", std::string(to_string(kind))},
              {"a", planar_json(a)},
              {"b", planar_json(b)},
              {"value", r.value},
              {"formula", r.formula}};
    if (kind == MetricKind::Bures && p1) {
      item["general_value"] = bures_distance_general(bloch_to_density(*p1), bloch_to_density(*p2));
    }
    reports.push_back(item);
    rec.add_row({a.r, a.theta, b.r, b.theta, r.value});
  }
  doc["distances"] = reports;
  maybe_write(args.out, args.format, rec);
  return doc;
}

// --- geodesic ------------------------------------------------------------------

struct GeodesicArgs {
  std::string metric = "both";
  std::optional<double> ra, ra_prime, rb, theta_b;
  double theta_a = 0.0;
  std::string theta = "0:6.283185307179586";
  int n = 1000;
  bool verify = false;
  double tol = 1e-6;
  int oracle_steps = 20000;
  std::string out, format;
};

json cmd_geodesic(const GeodesicArgs& args) {
  if (!args.ra) throw std::invalid_argument("--ra is required");
  const bool bvp = args.rb.has_value() || args.theta_b.has_value();
  if (bvp && (!args.rb || !args.theta_b)) throw std::invalid_argument("--rb needs --theta-b");
  if (bvp == args.ra_prime.has_value()) {
    throw std::invalid_argument("give either --ra-prime (initial value) or --rb/--theta-b (endpoints)");
  }
  if (args.n < 1) throw std::invalid_argument("-n must be positive");
  const auto [t0, t1] = parse_range(args.theta);
  const auto kinds = metric_list(args.metric);
  for (auto k : kinds) {
    if (!is_quantum(k)) throw std::invalid_argument("geodesics exist for bures and sjoqvist only");
    if (bvp && k == MetricKind::Bures) {
      throw std::invalid_argument("endpoint data is supported for the sjoqvist metric only");
    }
  }

  json doc = base_metadata("geodesic");
  doc["theta_range"] = {t0, t1};
  doc["samples"] = args.n + 1;
  ExportRecord rec;
  rec.columns.push_back("theta");
  std::vector<GeodesicCurve> curves;
  json summaries = json::array();
  bool breach = false, incomplete = false;
  for (auto kind : kinds) {
    const std::string tag(to_string(kind));
    GeodesicCurve curve;
    json summary{{"metric", tag}};
    if (kind == MetricKind::Bures) {
      const auto g = BuresGeodesic::from_initial(*args.ra, *args.ra_prime, args.theta_a);
      curve = g.sample(t0, t1, args.n);
      const auto& p = g.params();
      summary["params"] = {{"c_b", p.c_b}, {"a_b2", p.a_b2}, {"phase", p.phase}, {"direction", p.direction}};
    } else {
      const auto g = bvp ? SjoqvistGeodesic::from_endpoints(*args.ra, args.theta_a, *args.rb, *args.theta_b)
                         : SjoqvistGeodesic::from_initial(*args.ra, *args.ra_prime, args.theta_a);
      const auto& p = g.params();
      summary["params"] = {{"c_s", p.c_s}, {"k", p.k}, {"rate", p.rate}, {"offset", p.offset},
                           {"radial", p.radial}};
      if (g.is_radial()) {
        throw std::invalid_argument("equal endpoint angles give a radial segment, which has no r(theta) curve");
      }
      curve = g.sample(t0, t1, args.n);
    }
    summary["turning_points"] = curve.turning_points;
    summary["boundary_contacts"] = curve.boundary_contacts;
    summary["reaches_origin"] = curve.reaches_origin;
    summary["arc_length"] = curve.samples.back().arc_length;

    if (args.verify) {
      const double ra_prime = bvp ? std::get<SjoqvistGeodesicParams>(curve.params).ra_prime : *args.ra_prime;
      const double start = args.theta_a;
      // The oracle integrates from the initial point to each end of the range.
      double dev = 0.0;
      bool left = false;
      for (double end : {t0, t1}) {
        if (end == start) continue;
        const auto o = geodesic_oracle(kind, *args.ra, ra_prime, start, end, {.n_steps = args.oracle_steps});
        dev = std::max(dev, o.max_deviation);
        left = left || o.left_domain;
      }
      summary["oracle"] = {{"max_deviation", dev}, {"left_domain", left}, {"tol", args.tol},
                           {"steps", args.oracle_steps}};
      breach = breach || !(dev <= args.tol);
      incomplete = incomplete || left;
    }
    summaries.push_back(summary);
    rec.columns.insert(rec.columns.end(), {"r_" + tag, "dr_dtheta_" + tag, "arc_length_" + tag});
    curves.push_back(std::move(curve));
  }
  for (std::size_t i = 0; i <= static_cast<std::size_t>(args.n); ++i) {
    std::vector<std::optional<double>> row{curves.front().samples[i].theta};
    for (const auto& c : curves) {
      row.insert(row.end(), {c.samples[i].r, c.samples[i].dr_dtheta, c.samples[i].arc_length});
    }
    rec.add_row(std::move(row));
  }
  doc["curves"] = summaries;
  rec.metadata = doc;
  maybe_write(args.out, args.format, rec);
  if (breach) doc["status"] = "oracle deviation above tolerance";
  if (incomplete) doc["status"] = "oracle left its integration domain";
  if (breach) throw Breach(doc.dump(2), kToleranceBreach);
  if (incomplete) throw Breach(doc.dump(2), kVerificationFailure);
  return doc;
}

// --- contour -------------------------------------------------------------------

struct ContourArgs {
  std::string metric = "all";
  std::string field = "distance";
  std::vector<double> source{0.5, kPi / 2};
  int nr = 101, ntheta = 101;
  std::string out, format;
};

json cmd_contour(const ContourArgs& args) {
  if (args.source.size() != 2) throw std::invalid_argument("--source needs r,theta");
  const PlanarState src{args.source[0], args.source[1]};
  json doc = base_metadata("contour");
  doc["source"] = planar_json(src);
  doc["field"] = args.field;
  ExportRecord rec;

  if (args.field == "ratio") {
    const auto f = fidelity_ratio_field(src, args.nr, args.ntheta);
    rec.columns = {"r", "theta", "ratio"};
    for (int i = 0; i < f.nr; ++i) {
      for (int j = 0; j < f.ntheta; ++j) {
        const double v = f.at(i, j);
        rec.add_row({f.r[i], f.theta[j], std::isfinite(v) ? std::optional<double>(v) : std::nullopt});
      }
    }
    doc["grid"] = {{"nr", f.nr}, {"ntheta", f.ntheta}, {"rule", "cell midpoints on [0,1]x[0,pi]"}};
    doc["area_fraction"] = f.area_fraction;
    doc["undefined_cells"] = f.undefined_cells;
  } else if (args.field == "distance") {
    if (args.nr < 2 || args.ntheta < 2) throw std::invalid_argument("grid needs at least 2 x 2 nodes");
    const auto kinds = metric_list(args.metric);
    for (auto k : kinds) {
      if (k == MetricKind::Sjoqvist && src.r < 1e-12) {
        throw std::invalid_argument("the sjoqvist metric is undefined at r = 0");
      }
    }
    rec.columns = {"r", "theta"};
    for (auto k : kinds) rec.columns.push_back("d_" + std::string(to_string(k)));
    for (int i = 0; i < args.nr; ++i) {
      const double r = static_cast<double>(i) / (args.nr - 1);
      for (int j = 0; j < args.ntheta; ++j) {
        const double t = kPi * j / (args.ntheta - 1);
        std::vector<std::optional<double>> row{r, t};
        for (auto k : kinds) {
          if (k == MetricKind::Sjoqvist && r < 1e-12) {
            row.emplace_back();
          } else {
            row.emplace_back(distance(k, src, {r, t}));
          }
        }
        rec.add_row(std::move(row));
      }
    }
    doc["grid"] = {{"nr", args.nr}, {"ntheta", args.ntheta}, {"rule", "nodes on [0,1]x[0,pi] including ends"}};
  } else {
    throw std::invalid_argument("--field must be distance or ratio");
  }
  rec.metadata = doc;
  maybe_write(args.out, args.format, rec);
  return doc;
}

// --- fig2 ----------------------------------------------------------------------

struct Fig2Args {
  std::vector<double> r{1.0, 0.95, 0.75, 0.5};
  int samples = 181;
  std::string out, format;
};

json cmd_fig2(const Fig2Args& args) {
  if (args.samples < 2) throw std::invalid_argument("--samples must be at least 2");
  for (double r : args.r) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("r values must lie in (0, 1]");
  }
  ExportRecord rec;
  rec.columns = {"dtheta"};
  for (double r : args.r) {
    std::ostringstream label;
    label << "bures_r=" << r;
    rec.columns.push_back(label.str());
  }
  rec.columns.push_back("sjoqvist");

  int failures = 0;
  for (int i = 0; i < args.samples; ++i) {
    const double dt = kPi * i / (args.samples - 1);
    std::vector<std::optional<double>> row{dt};
    // The Sjoqvist length does not depend on a common radius.
    const double ls = sjoqvist_distance({args.r.front(), 0.0}, {args.r.front(), dt});
    for (double r : args.r) {
      const double lb = bures_distance({r, 0.0}, {r, dt});
      if (lb < 0.0 || lb > ls + 1e-12 || ls > kPi / 2 + 1e-12) ++failures;
      row.emplace_back(lb);
    }
    row.emplace_back(ls);
    rec.add_row(std::move(row));
  }
  json doc = base_metadata("fig2");
  doc["r_values"] = args.r;
  doc["samples"] = args.samples;
  doc["ordering_failures"] = failures;
  rec.metadata = doc;
  maybe_write(args.out, args.format, rec);
  if (failures > 0) throw Breach(doc.dump(2), kToleranceBreach);
  return doc;
}

// --- ranking -------------------------------------------------------------------

struct RankingArgs {
  std::optional<std::uint64_t> seed;
  int trials = 100000;
  std::string metrics = "bures,sjoqvist";
  std::string anchor = "none";
  double radius = 0.02;
  int show = 5;
  std::string out, format;
};

json case_json(const RankingCase& c) {
  return {{"pair1", {planar_json(c.pair1.first), planar_json(c.pair1.second)}},
          {"pair2", {planar_json(c.pair2.first), planar_json(c.pair2.second)}},
          {"d_first", c.d_first},
          {"d_second", c.d_second}};
}

json cmd_ranking(const RankingArgs& args) {
  if (!args.seed) throw std::invalid_argument("--seed is required for the random search");
  const auto comma = args.metrics.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--metrics needs two names, e.g. bures,sjoqvist");
  const MetricKind first = metric_from(args.metrics.substr(0, comma));
  const MetricKind second = metric_from(args.metrics.substr(comma + 1));

  std::optional<SearchAnchor> anchor;
  if (args.anchor == "s2") {
    anchor = SearchAnchor{{{0.5, 0}, {0.5, kPi}}, {{0.125, 0}, {0.25, kPi}}, args.radius};
  } else if (args.anchor == "s1") {
    const double c = (1.0 + std::sqrt(2.0)) / 4.0;
    anchor = SearchAnchor{{to_planar(Point2{0, 0}), to_planar(Point2{0, 1})},
                          {to_planar(Point2{0, 0}), to_planar(Point2{c, c})},
                          args.radius};
  } else if (args.anchor != "none") {
    throw std::invalid_argument("--anchor must be none, s1 or s2");
  }

  const auto res = find_ranking_violations(*args.seed, args.trials, first, second, anchor);
  json doc = base_metadata("ranking");
  doc["seed"] = res.seed;
  doc["trials"] = res.n_trials;
  doc["metrics"] = {std::string(to_string(first)), std::string(to_string(second))};
  doc["anchor"] = args.anchor;
  doc["violations"] = res.violations.size();
  json examples = json::array();
  for (std::size_t i = 0; i < res.violations.size() && static_cast<int>(i) < args.show; ++i) {
    examples.push_back(case_json(res.violations[i]));
  }
  doc["examples"] = examples;

  ExportRecord rec;
  rec.columns = {"r1a", "t1a", "r1b", "t1b", "r2a", "t2a", "r2b", "t2b",
                 "d_first_1", "d_first_2", "d_second_1", "d_second_2"};
  for (const auto& c : res.violations) {
    rec.add_row({c.pair1.first.r, c.pair1.first.theta, c.pair1.second.r, c.pair1.second.theta,
                 c.pair2.first.r, c.pair2.first.theta, c.pair2.second.r, c.pair2.second.theta,
                 c.d_first[0], c.d_first[1], c.d_second[0], c.d_second[1]});
  }
  rec.metadata = doc;
  maybe_write(args.out, args.format, rec);
  return doc;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bures and Sjoqvist geometry of qubit states in the Bloch ball", "blochgeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const auto add_output = [](CLI::App* cmd, std::string& path, std::string& format) {
    cmd->add_option("--out", path, "Write a CSV or JSON file (chosen by extension)");
    cmd->add_option("--format", format, "Override the file format")->check(CLI::IsMember({"csv", "json"}));
  };

  DistanceArgs dist;
  auto* c_dist = app.add_subcommand("distance", "Distance between two states");
  c_dist->add_option("--metric", dist.metric, "bures, sjoqvist, euclid, taxicab or all")
      ->check(CLI::IsMember({"bures", "sjoqvist", "euclid", "taxicab", "all"}));
  c_dist->add_option("--a", dist.a, "First state as r,theta")->delimiter(',')->allow_extra_args(false);
  c_dist->add_option("--b", dist.b, "Second state as r,theta")->delimiter(',')->allow_extra_args(false);
  c_dist->add_option("--a3", dist.a3, "First Bloch vector px,py,pz")->delimiter(',')->allow_extra_args(false);
  c_dist->add_option("--b3", dist.b3, "Second Bloch vector px,py,pz")->delimiter(',')->allow_extra_args(false);
  c_dist->add_flag("--wrap-angles", dist.wrap_angles, "Reduce theta_b - theta_a to [0, pi] before use");
  add_output(c_dist, dist.out, dist.format);

  GeodesicArgs geo;
  auto* c_geo = app.add_subcommand("geodesic", "Sample closed-form geodesics r(theta)");
  c_geo->add_option("--metric", geo.metric, "bures, sjoqvist or both")
      ->check(CLI::IsMember({"bures", "sjoqvist", "both"}));
  c_geo->add_option("--ra", geo.ra, "Initial radius");
  c_geo->add_option("--ra-prime", geo.ra_prime, "Initial slope dr/dtheta");
  c_geo->add_option("--theta-a", geo.theta_a, "Angle of the initial point");
  c_geo->add_option("--rb", geo.rb, "End radius (sjoqvist endpoint problem)");
  c_geo->add_option("--theta-b", geo.theta_b, "End angle (sjoqvist endpoint problem)");
  c_geo->add_option("--theta", geo.theta, "Sampled angle range a:b");
  c_geo->add_option("-n", geo.n, "Number of intervals");
  c_geo->add_flag("--verify", geo.verify, "Compare against RK4 integration of the Euler-Lagrange equation");
  c_geo->add_option("--tol", geo.tol, "Largest accepted oracle deviation");
  c_geo->add_option("--oracle-steps", geo.oracle_steps, "RK4 steps per integration leg");
  add_output(c_geo, geo.out, geo.format);

  ContourArgs con;
  auto* c_con = app.add_subcommand("contour", "Distance or fidelity-ratio field around a source state");
  c_con->add_option("--metric", con.metric, "bures, sjoqvist, euclid, taxicab or all")
      ->check(CLI::IsMember({"bures", "sjoqvist", "euclid", "taxicab", "all"}));
  c_con->add_option("--field", con.field, "distance or ratio")->check(CLI::IsMember({"distance", "ratio"}));
  c_con->add_option("--source", con.source, "Source state r,theta")->delimiter(',')->allow_extra_args(false);
  c_con->add_option("--nr", con.nr, "Grid size in r");
  c_con->add_option("--ntheta", con.ntheta, "Grid size in theta");
  add_output(c_con, con.out, con.format);

  Fig2Args fig;
  auto* c_fig = app.add_subcommand("fig2", "Distances between equal-radius states against dtheta");
  c_fig->add_option("--r", fig.r, "Common radii")->delimiter(',')->allow_extra_args(false);
  c_fig->add_option("--samples", fig.samples, "Number of dtheta values on [0, pi]");
  add_output(c_fig, fig.out, fig.format);

  RankingArgs rank;
  auto* c_rank = app.add_subcommand("ranking", "Seeded search for ranking violations");
  c_rank->add_option("--seed", rank.seed, "Seed of the mt19937_64 generator")->required();
  c_rank->add_option("--trials", rank.trials, "Number of random pair-of-pairs draws");
  c_rank->add_option("--metrics", rank.metrics, "Two metrics, e.g. bures,sjoqvist");
  c_rank->add_option("--anchor", rank.anchor, "none, s1 or s2")->check(CLI::IsMember({"none", "s1", "s2"}));
  c_rank->add_option("--radius", rank.radius, "Jitter around the anchor");
  c_rank->add_option("--show", rank.show, "Violations listed on stdout");
  add_output(c_rank, rank.out, rank.format);

  std::string suite = "all";
  std::uint64_t seed = 42;
  int trials = 0;
  auto* c_ver = app.add_subcommand("verify", "Run invariant suites");
  c_ver->add_option("--suite", suite, "metrics, geodesics, distances, rotations, ranking, rw or all")
      ->check(CLI::IsMember({"metrics", "geodesics", "distances", "rotations", "ranking", "rw", "all"}));
  c_ver->add_option("--seed", seed, "Seed (recorded in the report)");
  c_ver->add_option("--trials", trials, "Random samples per check; 0 keeps the defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    json doc;
    int code = kOk;
    if (*c_dist) {
      doc = cmd_distance(dist);
    } else if (*c_geo) {
      doc = cmd_geodesic(geo);
    } else if (*c_con) {
      doc = cmd_contour(con);
    } else if (*c_fig) {
      doc = cmd_fig2(fig);
    } else if (*c_rank) {
      doc = cmd_ranking(rank);
    } else if (*c_ver) {
      doc = run_suite(suite, seed, trials);
      if (!doc["passed"].get<bool>()) code = kVerificationFailure;
    }
    out << doc.dump(2) << '\n';
    return code;
  } catch (const Breach& b) {
    out << b.what() << '\n';
    return b.code;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace blochgeo::cli
