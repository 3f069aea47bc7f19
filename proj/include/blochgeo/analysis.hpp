#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "blochgeo/distances.hpp"

namespace blochgeo {

using StatePair = std::pair<PlanarState, PlanarState>;

/// Distances are equal for ranking purposes when they differ by at most this.
inline constexpr double kTieTolerance = 1e-12;

/// Comparison of two pairs under two metrics.
struct RankingCase {
  StatePair pair1;
  StatePair pair2;
  MetricKind first = MetricKind::Bures;
  MetricKind second = MetricKind::Sjoqvist;
  std::array<double, 2> d_first{};   // (d(pair1), d(pair2)) under `first`
  std::array<double, 2> d_second{};  // same under `second`
  /// One metric ranks pair1 strictly above pair2 and the other strictly below.
  bool violated = false;
};

/// Classical metrics see the Cartesian images of the planar states.
RankingCase check_ranking(const StatePair& pair1, const StatePair& pair2, MetricKind first,
                          MetricKind second);

/// Optional focus for the random search: four reference states (pair1, pair2)
/// jittered by up to `radius` in r and theta.
struct SearchAnchor {
  StatePair pair1;
  StatePair pair2;
  double radius = 0.05;
};

struct RankingSearch {
  std::uint64_t seed = 0;
  int n_trials = 0;
  MetricKind first = MetricKind::Bures;
  MetricKind second = MetricKind::Sjoqvist;
  std::vector<RankingCase> violations;
};

/// Seeded search (std::mt19937_64) over pairs of planar pairs with r in (0, 1]
/// and theta in [0, pi]. Returns every violating case in trial order.
RankingSearch find_ranking_violations(std::uint64_t seed, int n_trials, MetricKind first,
                                      MetricKind second,
                                      const std::optional<SearchAnchor>& anchor = std::nullopt);

struct EquidistanceResult {
  MetricKind kind = MetricKind::Sjoqvist;
  std::vector<StatePair> pairs;
  std::vector<double> distances;  // aligned with `pairs`
  /// Indices into `pairs`, grouped by distance within kTieTolerance and ordered
  /// by increasing distance.
  std::vector<std::vector<std::size_t>> groups;
};

EquidistanceResult equidistance_check(const std::vector<StatePair>& pairs, MetricKind kind);

/// Fidelity-like scores built from normalized distances:
///   Bures    (1 - L^2 / 2)^2
///   Sjoqvist (1 - L^2 / (pi/2)^2)^2
double fidelity_bures(const PlanarState& a, const PlanarState& b);
double fidelity_sjoqvist(const PlanarState& a, const PlanarState& b);

/// Ratio F_Sjoqvist / F_Bures sampled at the midpoints of an nr x ntheta grid on
/// [0, 1] x [0, pi].
struct FidelityRatioField {
  PlanarState source;
  int nr = 0;
  int ntheta = 0;
  std::vector<double> r;      // cell midpoints, size nr
  std::vector<double> theta;  // cell midpoints, size ntheta
  /// Row-major (r index major). NaN where the ratio is undefined.
  std::vector<double> ratio;
  /// Cells with F_Bures below 1e-15, left out of the area estimate.
  int undefined_cells = 0;
  /// Fraction of defined cells with 0 <= ratio <= 1.
  double area_fraction = 0.0;

  double at(int i, int j) const { return ratio[static_cast<std::size_t>(i) * ntheta + j]; }
};

/// Both grid sizes must be at least 100.
FidelityRatioField fidelity_ratio_field(const PlanarState& source, int nr, int ntheta);

/// Closed Robertson-Walker spatial geometry at one point.
struct RWParams {
  double chi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  int k = 1;           // spatial curvature sign
  double scale = 1.0;  // R(t) at the slice
};

struct RWDisplacement {
  double dchi = 0.0;
  double dtheta = 0.0;
  double dphi = 0.0;
};

/// dl^2 = R^2 [dr^2 / (1 - k r^2) + r^2 dOmega^2] with r = sin(chi) and
/// dr = cos(chi) dchi. For k = +1 at chi = pi/2 the first term takes its limit dchi^2.
double rw_spatial_line_element(const RWParams& params, const RWDisplacement& d);

struct RWSample {
  RWParams at;
  RWDisplacement d;
};

struct RWComparison {
  double max_relative_deviation = 0.0;
  double max_absolute_deviation = 0.0;
};

/// Compares dl^2 with 4 ds^2 of the Bures metric in hyperspherical form. Only
/// k = +1 with R = 1 is meaningful; other parameters and chi outside (0, pi/2]
/// are rejected.
RWComparison rw_spatial_equivalence(const std::vector<RWSample>& samples);

}  // namespace blochgeo
