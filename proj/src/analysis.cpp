#include "blochgeo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace blochgeo {

namespace {

constexpr double kPi = std::numbers::pi;

// +1, -1 or 0 (tie) for the comparison of x against y.
int compare(double x, double y) {
  if (std::abs(x - y) <= kTieTolerance) return 0;
  return x < y ? -1 : 1;
}

}  // namespace

RankingCase check_ranking(const StatePair& pair1, const StatePair& pair2, MetricKind first,
                          MetricKind second) {
  RankingCase c{pair1, pair2, first, second};
  c.d_first = {distance(first, pair1.first, pair1.second),
               distance(first, pair2.first, pair2.second)};
  c.d_second = {distance(second, pair1.first, pair1.second),
                distance(second, pair2.first, pair2.second)};
  c.violated = compare(c.d_first[0], c.d_first[1]) * compare(c.d_second[0], c.d_second[1]) < 0;
  return c;
}

RankingSearch find_ranking_violations(std::uint64_t seed, int n_trials, MetricKind first,
                                      MetricKind second,
                                      const std::optional<SearchAnchor>& anchor) {
  if (n_trials < 1) throw DomainError("ranking search needs at least one trial");
  RankingSearch out{seed, n_trials, first, second, {}};
  std::mt19937_64 rng(seed);
  // r is drawn from (0, 1] so the Sjoqvist puncture at r = 0 is never hit.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto radius = [&] { return 1.0 - unit(rng); };
  auto angle = [&] { return kPi * unit(rng); };
  auto jitter = [&](const PlanarState& s, double h) {
    const double r = std::clamp(s.r + h * (2.0 * unit(rng) - 1.0), 1e-6, 1.0);
    const double t = std::clamp(s.theta + h * (2.0 * unit(rng) - 1.0), 0.0, kPi);
    return PlanarState{r, t};
  };

  for (int i = 0; i < n_trials; ++i) {
    StatePair p1, p2;
    if (anchor) {
      p1 = {jitter(anchor->pair1.first, anchor->radius), jitter(anchor->pair1.second, anchor->radius)};
      p2 = {jitter(anchor->pair2.first, anchor->radius), jitter(anchor->pair2.second, anchor->radius)};
    } else {
      p1 = {{radius(), angle()}, {radius(), angle()}};
      p2 = {{radius(), angle()}, {radius(), angle()}};
    }
    auto c = check_ranking(p1, p2, first, second);
    if (c.violated) out.violations.push_back(std::move(c));
  }
  return out;
}

EquidistanceResult equidistance_check(const std::vector<StatePair>& pairs, MetricKind kind) {
  EquidistanceResult out;
  out.kind = kind;
  out.pairs = pairs;
  for (const auto& [a, b] : pairs) out.distances.push_back(distance(kind, a, b));

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto i, auto j) { return out.distances[i] < out.distances[j]; });
  for (auto idx : order) {
    if (!out.groups.empty() &&
        out.distances[idx] - out.distances[out.groups.back().front()] <= kTieTolerance) {
      out.groups.back().push_back(idx);
    } else {
      out.groups.push_back({idx});
    }
  }
  return out;
}

double fidelity_bures(const PlanarState& a, const PlanarState& b) {
  const double l = bures_distance(a, b);
  const double x = 1.0 - l * l / 2.0;
  return x * x;
}

double fidelity_sjoqvist(const PlanarState& a, const PlanarState& b) {
  const double l = sjoqvist_distance(a, b);
  const double x = 1.0 - l * l / (kPi * kPi / 4.0);
  return x * x;
}

FidelityRatioField fidelity_ratio_field(const PlanarState& source, int nr, int ntheta) {
  if (nr < 100 || ntheta < 100) throw DomainError("fidelity-ratio grid must be at least 100 x 100");
  FidelityRatioField f;
  f.source = source;
  f.nr = nr;
  f.ntheta = ntheta;
  for (int i = 0; i < nr; ++i) f.r.push_back((i + 0.5) / nr);
  for (int j = 0; j < ntheta; ++j) f.theta.push_back((j + 0.5) * kPi / ntheta);
  f.ratio.resize(static_cast<std::size_t>(nr) * ntheta);

  long inside = 0;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ntheta; ++j) {
      const PlanarState b{f.r[i], f.theta[j]};
      const double fb = fidelity_bures(source, b);
      double& cell = f.ratio[static_cast<std::size_t>(i) * ntheta + j];
      if (fb < 1e-15) {
        cell = std::numeric_limits<double>::quiet_NaN();
        ++f.undefined_cells;
        continue;
      }
      cell = fidelity_sjoqvist(source, b) / fb;
      if (cell >= 0.0 && cell <= 1.0) ++inside;
    }
  }
  const long defined = static_cast<long>(nr) * ntheta - f.undefined_cells;
  f.area_fraction = defined > 0 ? static_cast<double>(inside) / defined : 0.0;
  return f;
}

double rw_spatial_line_element(const RWParams& p, const RWDisplacement& d) {
  const double r = std::sin(p.chi);
  const double dr = std::cos(p.chi) * d.dchi;
  // 1 - k r^2. For k = +1 the factor 1 - r = 1 - sin(chi) is taken from its
  // half-angle form; subtracting the rounded sine from 1 would leave a
  // relative error near eps / (pi/2 - chi)^2 close to the equator chi = pi/2.
  double w = 1.0 - p.k * r * r;
  if (p.k == 1) {
    const double half = std::sin(kPi / 4 - p.chi / 2);
    w = 2.0 * half * half * (1.0 + r);
  }
  const double radial = w > 0.0 ? dr * dr / w : d.dchi * d.dchi;
  const double st = std::sin(p.theta);
  const double omega = d.dtheta * d.dtheta + st * st * d.dphi * d.dphi;
  return p.scale * p.scale * (radial + r * r * omega);
}

RWComparison rw_spatial_equivalence(const std::vector<RWSample>& samples) {
  RWComparison out;
  for (const auto& s : samples) {
    if (s.at.k != 1 || s.at.scale != 1.0) {
      throw DomainError("the Bures comparison holds only for k = +1 and R = 1");
    }
    if (!(s.at.chi > 0.0 && s.at.chi <= kPi / 2)) {
      throw DomainError("chi must lie in (0, pi/2]");
    }
    const double rw = rw_spatial_line_element(s.at, s.d);
    const double bures = line_element_hyperspherical(MetricKind::Bures, s.at.chi, s.at.theta,
                                                     {s.d.dchi, s.d.dtheta, s.d.dphi});
    const double diff = std::abs(rw - bures);
    out.max_absolute_deviation = std::max(out.max_absolute_deviation, diff);
    if (bures > 0.0) out.max_relative_deviation = std::max(out.max_relative_deviation, diff / bures);
  }
  return out;
}

}  // namespace blochgeo
