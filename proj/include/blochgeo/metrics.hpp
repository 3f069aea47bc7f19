#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "blochgeo/states.hpp"

namespace blochgeo {

/// Distance functions known to the library. Euclid and Taxicab are the classical
/// foils and only apply to Cartesian coordinates of the xz-plane.
enum class MetricKind { Bures, Sjoqvist, Euclid, Taxicab };

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> parse_metric_kind(std::string_view name);
bool is_quantum(MetricKind kind);

struct SphericalDisplacement {
  double dp = 0.0;
  double dtheta = 0.0;
  double dphi = 0.0;
};

struct HypersphericalDisplacement {
  double dchi = 0.0;
  double dtheta = 0.0;
  double dphi = 0.0;
};

/// Chain rule between Cartesian increments dp and (dp, dtheta, dphi) at `s`.
/// The inverse direction needs p > 0 and sin(theta) != 0.
Vec3 to_cartesian_displacement(const SphericalState& s, const SphericalDisplacement& d);
SphericalDisplacement to_spherical_displacement(const SphericalState& s, const Vec3& dp);

// Line elements. All return ds^2 (the hyperspherical form returns 4 ds^2, the
// natural normalization of the unit 3-sphere / S^1 x S^2 pictures).
//
// Domain: Bures on the open ball p < 1; Sjoqvist on the punctured open ball
// 0 < p < 1. Boundary points raise DomainError rather than returning infinities.

double line_element_cartesian(MetricKind kind, const BlochVector& p, const Vec3& dp);
double line_element_spherical(MetricKind kind, const SphericalState& s,
                              const SphericalDisplacement& d);
/// chi in (0, pi/2] with p = sin(chi).
double line_element_hyperspherical(MetricKind kind, double chi, double theta,
                                   const HypersphericalDisplacement& d);

/// Point x^mu = (x0, x) = (sqrt(1 - p^2), p) of the four-dimensional embedding.
struct EmbeddedPoint4 {
  double x0 = 1.0;
  Vec3 x = Vec3::Zero();

  double norm_squared() const { return x0 * x0 + x.squaredNorm(); }
};

EmbeddedPoint4 embed_extrinsic(const SphericalState& s);

/// Weights of 4 ds^2 = w0 (dx0)^2 + wx dx.dx in the embedding coordinates.
/// Bures is flat (1, 1); Sjoqvist is ((2p^2 - 1)/p^4, 1/p^2), whose w0 changes
/// sign at p = 1/sqrt(2).
struct ExtrinsicWeights {
  double temporal = 1.0;
  double spatial = 1.0;
};

ExtrinsicWeights extrinsic_weights(MetricKind kind, double p);

/// 4 ds^2 evaluated from embedding increments at radius p.
double extrinsic_line_element(MetricKind kind, double p, double dx0, const Vec3& dx);

/// A point of a planar path (phi = 0) together with its velocity with respect
/// to the path parameter s.
struct PathSample {
  double s = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double dr_ds = 0.0;
  double dtheta_ds = 0.0;
};

struct EmbeddingTrajectory {
  MetricKind kind = MetricKind::Bures;
  std::vector<double> s;
  std::vector<Vec3> spatial;
  /// Sjoqvist only: integral of sqrt|w0| dx0/ds. Empty for Bures.
  std::vector<double> temporal;
  /// Sjoqvist only: true when the path crosses p = 1/sqrt(2), where w0 flips sign
  /// and the |w0| convention hides the change of signature.
  bool crosses_signature_change = false;
};

/// Cumulative trapezoidal integral of the spatial (and, for Sjoqvist, temporal)
/// embedding coordinates along the sampled path, starting from x(s_0) = p(s_0)
/// and x0(s_0) = sqrt(1 - p(s_0)^2).
///
/// Bures integrand: sin(chi) dphat/ds. Sjoqvist: wx^{-1/2} dx/ds and
/// sqrt|w0| dx0/ds. Sjoqvist paths may not touch p = 0.
EmbeddingTrajectory embedding_trajectory(MetricKind kind, std::span<const PathSample> path);

}  // namespace blochgeo
