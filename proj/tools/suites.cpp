// Invariant suites behind `blochgeo verify`.
//
// Every suite draws from its own std::mt19937_64 seeded with the user seed, so
// suites give the same answers whether run alone or as part of "all".

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "blochgeo/analysis.hpp"
#include "blochgeo/geodesics.hpp"
#include "blochgeo/rotations.hpp"
#include "cli.hpp"

namespace blochgeo::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

class Report {
 public:
  Report(std::string suite, std::uint64_t seed) : doc_{{"suite", suite}, {"seed", seed}} {
    doc_["checks"] = json::array();
    doc_["notes"] = json::array();
  }

  // Passes when value <= threshold.
  void at_most(const std::string& name, double value, double threshold) {
    add(name, value <= threshold, value, threshold);
  }
  void holds(const std::string& name, bool ok) { add(name, ok, ok ? 1.0 : 0.0, 1.0); }
  // Recorded for the reader; does not affect the verdict.
  void note(const std::string& name, double value) {
    doc_["notes"].push_back({{"name", name}, {"value", value}});
  }

  json finish() {
    bool all = true;
    for (const auto& c : doc_["checks"]) all = all && c["passed"].get<bool>();
    doc_["passed"] = all;
    return doc_;
  }

 private:
  void add(const std::string& name, bool ok, double value, double threshold) {
    json v = std::isfinite(value) ? json(value) : json(nullptr);
    doc_["checks"].push_back({{"name", name}, {"passed", ok}, {"value", v}, {"threshold", threshold}});
  }
  json doc_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

BlochVector random_bloch(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return BlochVector(random_unit(rng) * std::cbrt(u(rng)));
}

// ---------------------------------------------------------------------------

json metrics_suite(std::uint64_t seed, int trials) {
  Report rep("metrics", seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = trials > 0 ? trials : 10000;
  double worst_sph = 0.0, worst_hyp = 0.0, worst_ext = 0.0;
  for (int i = 0; i < n; ++i) {
    for (auto kind : {MetricKind::Bures, MetricKind::Sjoqvist}) {
      const double p = 0.1 + 0.85 * u(rng);
      const SphericalState s{p, 0.05 + (kPi - 0.1) * u(rng), 2.0 * kPi * u(rng)};
      const SphericalDisplacement d{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};

      const double sph = line_element_spherical(kind, s, d);
      const double cart = line_element_cartesian(kind, to_bloch(s), to_cartesian_displacement(s, d));
      worst_sph = std::max(worst_sph, rel(cart, sph));

      const double chi = std::asin(p);
      const double hyp = line_element_hyperspherical(
          kind, chi, s.theta, {d.dp / std::sqrt(1.0 - p * p), d.dtheta, d.dphi});
      worst_hyp = std::max(worst_hyp, rel(hyp, 4.0 * sph));

      // Five-point central differences of the embedding along the displacement,
      // Richardson-combined over steps 2h and h. The step shrinks towards p = 1,
      // where sqrt(1 - p^2) bends sharply.
      auto at = [&](double t) {
        return embed_extrinsic({s.p + t * d.dp, s.theta + t * d.dtheta, s.phi + t * d.dphi});
      };
      auto stencil = [&](double h) {
        const auto m2 = at(-2 * h), m1 = at(-h), p1 = at(h), p2 = at(2 * h);
        return std::pair<double, Vec3>((m2.x0 - 8.0 * m1.x0 + 8.0 * p1.x0 - p2.x0) / (12.0 * h),
                                       (m2.x - 8.0 * m1.x + 8.0 * p1.x - p2.x) / (12.0 * h));
      };
      const double h = 3e-3 * std::min(1.0, 5.0 * (1.0 - p));
      const auto coarse = stencil(2.0 * h), fine = stencil(h);
      const double dx0 = (16.0 * fine.first - coarse.first) / 15.0;
      const Vec3 dx = (16.0 * fine.second - coarse.second) / 15.0;
      worst_ext = std::max(worst_ext, rel(extrinsic_line_element(kind, p, dx0, dx), 4.0 * sph));
    }
  }
  rep.at_most("cartesian_vs_spherical_rel", worst_sph, 1e-9);
  rep.at_most("hyperspherical_vs_spherical_rel", worst_hyp, 1e-9);
  rep.at_most("extrinsic_fd_vs_spherical_rel", worst_ext, 1e-9);

  const auto w = extrinsic_weights(MetricKind::Sjoqvist, 0.5);
  rep.holds("sjoqvist_temporal_weight_negative_inside", w.temporal < 0.0);
  rep.holds("sjoqvist_temporal_weight_zero_at_pivot",
            std::abs(extrinsic_weights(MetricKind::Sjoqvist, 1.0 / std::sqrt(2.0)).temporal) < 1e-12);
  return rep.finish();
}

json geodesics_suite(std::uint64_t seed, int trials) {
  Report rep("geodesics", seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = trials > 0 ? trials : 50;

  double worst_oracle = 0.0, worst_beltrami = 0.0, worst_bures_arc = 0.0, worst_sjo_arc = 0.0;
  bool oracle_complete = true;
  for (int i = 0; i < n; ++i) {
    double ra = 0.5, rp = 0.1, ta = 0.0;
    if (i > 0) {
      // Redraw until the Sjoqvist curve keeps clear of r = 0 over the window;
      // past that point it runs into the maximally mixed state.
      do {
        ra = 0.1 + 0.8 * u(rng);
        rp = 2.0 * u(rng) - 1.0;
        ta = 2.0 * kPi * u(rng);
      } while (SjoqvistGeodesic::from_initial(ra, rp, ta).sample(ta, ta + 1.0, 1).reaches_origin);
    }
    const double tb = ta + 1.0;
    for (auto kind : {MetricKind::Bures, MetricKind::Sjoqvist}) {
      const auto o = geodesic_oracle(kind, ra, rp, ta, tb, {.n_steps = 4000});
      oracle_complete = oracle_complete && !o.left_domain;
      worst_oracle = std::max(worst_oracle, o.max_deviation);
    }
    const auto bg = BuresGeodesic::from_initial(ra, rp, ta);
    const auto sg = SjoqvistGeodesic::from_initial(ra, rp, ta);
    const double c_b = bg.params().c_b, c_s = sg.params().c_s;
    for (int k = 0; k <= 10; ++k) {
      const double t = ta + 0.1 * k;
      if (1.0 - bg.radius(t) > 1e-6) worst_beltrami = std::max(worst_beltrami, rel(bg.beltrami(t), c_b));
      if (1.0 - sg.radius(t) > 1e-6) worst_beltrami = std::max(worst_beltrami, rel(sg.beltrami(t), c_s));
    }

    // Geodesic arcs against the closed-form distances; the Bures length of a
    // short arc is 2 asin(L_B / 2).
    const double span = 0.5;
    const auto bc = bg.sample(ta, ta + span, 2000);
    if (bc.boundary_contacts == 0) {
      const double lb = bures_distance({ra, ta}, {bg.radius(ta + span), ta + span});
      worst_bures_arc = std::max(worst_bures_arc,
                                 std::abs(bc.samples.back().arc_length - 2.0 * std::asin(lb / 2.0)));
    }
    const double rb = 0.1 + 0.8 * u(rng);
    const auto sb = SjoqvistGeodesic::from_endpoints(ra, ta, rb, tb).sample(ta, tb, 2000);
    worst_sjo_arc = std::max(worst_sjo_arc, std::abs(sb.samples.back().arc_length -
                                                     sjoqvist_distance({ra, ta}, {rb, tb})));
  }
  rep.at_most("oracle_sup_norm", worst_oracle, 1e-8);
  rep.holds("oracle_stayed_in_domain", oracle_complete);
  rep.at_most("beltrami_constant_rel", worst_beltrami, 1e-10);
  rep.at_most("bures_arc_vs_distance", worst_bures_arc, 1e-8);
  rep.at_most("sjoqvist_arc_vs_distance", worst_sjo_arc, 1e-8);

  const auto turn = geodesic_oracle(MetricKind::Bures, 0.5, 0.1, 0.0, 2.0 * kPi, {.n_steps = 20000});
  rep.at_most("bures_full_turn_oracle", turn.max_deviation, 1e-8);
  return rep.finish();
}

json distances_suite(std::uint64_t seed, int trials) {
  Report rep("distances", seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = trials > 0 ? trials : 100000;

  double worst_order = 0.0, worst_sym = 0.0, worst_equal = 0.0, max_ls = 0.0;
  int above_half_pi = 0;
  for (int i = 0; i < n; ++i) {
    const PlanarState a{1.0 - u(rng), kPi * u(rng)}, b{1.0 - u(rng), kPi * u(rng)};
    const double lb = bures_distance(a, b), ls = sjoqvist_distance(a, b);
    worst_order = std::max({worst_order, -lb, lb - ls});
    if (ls > kPi / 2 + 1e-12) ++above_half_pi;
    max_ls = std::max(max_ls, ls);
    worst_sym = std::max({worst_sym, std::abs(lb - bures_distance(b, a)),
                          std::abs(ls - sjoqvist_distance(b, a))});
    // Equal radii, the setting of the dtheta curves.
    const PlanarState c{a.r, b.theta};
    const double lbe = bures_distance(a, c), lse = sjoqvist_distance(a, c);
    worst_equal = std::max({worst_equal, -lbe, lbe - lse, lse - kPi / 2});
  }
  rep.at_most("ordering_bures_le_sjoqvist", worst_order, 1e-12);
  rep.at_most("ordering_equal_radii_le_half_pi", worst_equal, 1e-12);
  // With unequal radii the asin term lifts the Sjoqvist length above pi/2.
  rep.note("pairs_with_sjoqvist_above_half_pi", above_half_pi);
  rep.note("largest_sjoqvist_length", max_ls);
  rep.at_most("symmetry", worst_sym, 1e-12);

  double worst_pure_s = 0.0, worst_pure_b = 0.0;
  for (double dt : {0.5, 0.25, 0.1, 0.05, 0.025}) {
    worst_pure_s = std::max(worst_pure_s, std::abs(sjoqvist_distance({1, 0}, {1, dt}) - dt / 2));
    const double gap = std::abs(bures_distance({1, 0}, {1, dt}) - dt / 2);
    worst_pure_b = std::max(worst_pure_b, gap - std::pow(dt, 3) / 96.0 * (1.0 + 1e-6));
  }
  rep.at_most("pure_sjoqvist_equals_half_dtheta", worst_pure_s, 1e-12);
  rep.at_most("pure_bures_gap_within_cubic_bound", worst_pure_b, 0.0);

  double worst_fid = 0.0, worst_gen = 0.0;
  for (int i = 0; i < std::min(n, 10000); ++i) {
    const auto r1 = bloch_to_density(random_bloch(rng)), r2 = bloch_to_density(random_bloch(rng));
    const double f = fidelity(r1, r2);
    worst_fid = std::max(worst_fid, std::abs(f - uhlmann_fidelity(r1, r2)));
    worst_gen = std::max(worst_gen, std::abs(std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - std::sqrt(f))) -
                                             bures_distance_general(r1, r2)));
  }
  rep.at_most("qubit_fidelity_vs_matrix_sqrt", worst_fid, 1e-10);
  rep.at_most("fidelity_distance_vs_general", worst_gen, 1e-7);
  return rep.finish();
}

json rotations_suite(std::uint64_t seed, int trials) {
  Report rep("rotations", seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = trials > 0 ? trials : 10000;

  double worst_dual = 0.0, worst_cover = 0.0;
  for (int i = 0; i < std::min(n, 1000); ++i) {
    const double alpha = 4.0 * kPi * u(rng) - 2.0 * kPi;
    const Vec3 axis = random_unit(rng);
    const auto su = su2_from_axis_angle(alpha, axis);
    const Mat3 a = so3_from_su2(su).matrix();
    worst_dual = std::max(worst_dual, (a - rotation_from_axis_angle(alpha, axis).matrix()).cwiseAbs().maxCoeff());
    worst_cover = std::max(worst_cover, (a - so3_from_su2(-su).matrix()).cwiseAbs().maxCoeff());
  }
  rep.at_most("trace_formula_vs_explicit_matrix", worst_dual, 1e-12);
  rep.at_most("double_cover", worst_cover, 0.0);

  double worst_iso_b = 0.0, worst_plane = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto p1 = random_bloch(rng), p2 = random_bloch(rng);
    const auto red = reduce_to_xz_plane(p1, p2);
    const double general = bures_distance_general(bloch_to_density(p1), bloch_to_density(p2));
    worst_iso_b = std::max(worst_iso_b, std::abs(general - bures_distance(red.a, red.b)));
    const Vec3 q1 = red.r_total * p1.vec(), q2 = red.r_total * p2.vec();
    worst_plane = std::max({worst_plane, std::abs(q1.y()), std::abs(q2.y()),
                            std::abs(q1.x()), std::abs(q2.norm() - p2.norm())});
  }
  rep.at_most("reduction_preserves_bures_distance", worst_iso_b, 1e-10);
  rep.at_most("reduction_lands_in_plane", worst_plane, 1e-10);
  return rep.finish();
}

json ranking_suite(std::uint64_t seed, int trials) {
  Report rep("ranking", seed);
  const double c = (1.0 + std::sqrt(2.0)) / 4.0;
  const StatePair s1a{to_planar(Point2{0, 0}), to_planar(Point2{0, 1})};
  const StatePair s1b{to_planar(Point2{0, 0}), to_planar(Point2{c, c})};
  const auto r1 = check_ranking(s1a, s1b, MetricKind::Euclid, MetricKind::Taxicab);
  rep.holds("s1_euclid_vs_taxicab_violated", r1.violated);

  const StatePair s2a{{0.5, 0}, {0.5, kPi}}, s2b{{0.125, 0}, {0.25, kPi}};
  const auto r2 = check_ranking(s2a, s2b, MetricKind::Bures, MetricKind::Sjoqvist);
  rep.holds("s2_bures_vs_sjoqvist_violated", r2.violated);

  const StatePair s3a{{0.25, 0}, {0.25, kPi}}, s3b{{0.5, 0}, {0.5, kPi}};
  rep.holds("s3_sjoqvist_tie", equidistance_check({s3a, s3b}, MetricKind::Sjoqvist).groups.size() == 1);
  rep.holds("s3_bures_no_tie", equidistance_check({s3a, s3b}, MetricKind::Bures).groups.size() == 2);

  const int n = trials > 0 ? trials : 100000;
  const auto near_s2 = find_ranking_violations(seed, n, MetricKind::Bures, MetricKind::Sjoqvist,
                                               SearchAnchor{s2a, s2b, 0.02});
  rep.holds("search_finds_violations_near_s2", !near_s2.violations.empty());
  const auto self = find_ranking_violations(seed, std::min(n, 10000), MetricKind::Euclid, MetricKind::Euclid);
  rep.holds("metric_agrees_with_itself", self.violations.empty());
  return rep.finish();
}

json rw_suite(std::uint64_t seed, int trials) {
  Report rep("rw", seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = trials > 0 ? trials : 1000;
  std::vector<RWSample> samples;
  for (int i = 0; i < n; ++i) {
    RWSample s;
    s.at.chi = kPi / 2 * (1.0 - u(rng));
    s.at.theta = kPi * u(rng);
    s.at.phi = 2.0 * kPi * u(rng);
    s.d = {1e-3 * (2.0 * u(rng) - 1.0), 1e-3 * (2.0 * u(rng) - 1.0), 1e-3 * (2.0 * u(rng) - 1.0)};
    samples.push_back(s);
  }
  rep.at_most("rw_vs_bures_rel", rw_spatial_equivalence(samples).max_relative_deviation, 1e-10);
  return rep.finish();
}

}  // namespace

json run_suite(const std::string& name, std::uint64_t seed, int trials) {
  if (name == "metrics") return metrics_suite(seed, trials);
  if (name == "geodesics") return geodesics_suite(seed, trials);
  if (name == "distances") return distances_suite(seed, trials);
  if (name == "rotations") return rotations_suite(seed, trials);
  if (name == "ranking") return ranking_suite(seed, trials);
  if (name == "rw") return rw_suite(seed, trials);
  if (name == "all") {
    json doc{{"suite", "all"}, {"seed", seed}, {"suites", json::array()}};
    bool all = true;
    for (const char* s : {"metrics", "geodesics", "distances", "rotations", "ranking", "rw"}) {
      auto r = run_suite(s, seed, trials);
      all = all && r["passed"].get<bool>();
      doc["suites"].push_back(std::move(r));
    }
    doc["passed"] = all;
    return doc;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace blochgeo::cli
