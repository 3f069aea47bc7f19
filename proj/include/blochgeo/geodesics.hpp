#pragma once

#include <variant>
#include <vector>

#include "blochgeo/metrics.hpp"

namespace blochgeo {

// Closed-form geodesics r(theta) in a constant-phi plane (taken as the xz-plane).
// Both come from the Beltrami first integral L - r' dL/dr' = const of the
// length functionals
//   Bures:    L = sqrt(r^2 + r'^2 / (1 - r^2))
//   Sjoqvist: L = sqrt(1   + r'^2 / (1 - r^2))
// with r' = dr/dtheta and length = (1/2) * integral of L dtheta.

/// Lagrangian of the planar length functional. Requires r < 1 unless dr == 0.
double planar_lagrangian(MetricKind kind, double r, double dr);

struct BuresGeodesicParams {
  double c_b = 1.0;       // Beltrami constant r^2 / L
  double a_b2 = 1.0;      // 1 / c_b^2
  double phase = 0.0;     // arctan(sqrt((1 - ra^2)^2 (ra / ra')^2)), in [0, pi/2]
  double direction = 1.0; // sign of ra' (+1 when ra' = 0)
  double ra = 0.5;
  double ra_prime = 0.0;
  double theta_a = 0.0;
};

struct SjoqvistGeodesicParams {
  double c_s = 1.0;        // Beltrami constant 1 / L
  double k = 0.0;          // r'^2 / (1 - r^2) = (1 - c_s^2) / c_s^2
  double rate = 0.0;       // r = sin(rate * theta + offset)
  double offset = 0.0;
  double ra = 0.5;
  double ra_prime = 0.0;
  double theta_a = 0.0;
  bool radial = false;     // theta_a == theta_b boundary data: the segment theta = const
  double rb = 0.5;         // only meaningful for radial segments
};

struct CurveSample {
  double theta = 0.0;
  double r = 0.0;
  double dr_dtheta = 0.0;
  double arc_length = 0.0;  // from the first sample
};

struct GeodesicCurve {
  MetricKind kind = MetricKind::Bures;
  std::variant<BuresGeodesicParams, SjoqvistGeodesicParams> params;
  std::vector<CurveSample> samples;
  /// Interior extrema of r(theta) passed by the sampled range. For Bures these
  /// are the turning points r = c_b and the pure-state touches r = 1.
  int turning_points = 0;
  /// Points of the sampled range where the curve touches the pure-state
  /// boundary r = 1.
  int boundary_contacts = 0;
  /// Sjoqvist only: the continued sine form reaches r <= 0 inside the range,
  /// i.e. the curve runs into the maximally mixed state where the metric is
  /// singular. Samples past that point are not physical.
  bool reaches_origin = false;
};

/// Bures geodesic through (ra, theta_a) with slope ra' = dr/dtheta.
///
/// The usual closed form
///   r^2 = (1 + tan^2 u) / (1 + a_b^2 tan^2 u),  u = phase - (theta - theta_a),
/// is evaluated as r^2 = 1 / (cos^2 u + a_b^2 sin^2 u), which is the same curve
/// continued smoothly through the poles of tan u. A negative ra' flips the sign
/// in front of (theta - theta_a); ra' = 0 takes phase = pi/2.
class BuresGeodesic {
 public:
  /// Requires 0 < ra < 1 and a finite ra'.
  static BuresGeodesic from_initial(double ra, double ra_prime, double theta_a);

  const BuresGeodesicParams& params() const { return p_; }
  double radius(double theta) const;
  double slope(double theta) const;
  /// r^2 / L, constant along the curve.
  double beltrami(double theta) const;
  /// The tan-form expression itself; undefined where cos(u) = 0.
  double radius_tan_form(double theta) const;

  GeodesicCurve sample(double theta_begin, double theta_end, int n) const;

 private:
  friend EmbeddingTrajectory embedding_trajectory(MetricKind, const GeodesicCurve&, int);
  explicit BuresGeodesic(const BuresGeodesicParams& p) : p_(p) {}
  double argument(double theta) const;
  double speed_term(double theta) const;  // r'^2 / (1 - r^2), continuous at r = 1
  BuresGeodesicParams p_;
};

/// Sjoqvist geodesic r(theta) = sin(rate * theta + offset).
class SjoqvistGeodesic {
 public:
  /// Initial-value form: requires 0 < ra < 1.
  static SjoqvistGeodesic from_initial(double ra, double ra_prime, double theta_a);
  /// Boundary-value form: requires ra, rb in (0, 1]. Equal angles with different
  /// radii give the radial segment theta = theta_a; equal endpoints are rejected.
  static SjoqvistGeodesic from_endpoints(double ra, double theta_a, double rb, double theta_b);

  const SjoqvistGeodesicParams& params() const { return p_; }
  bool is_radial() const { return p_.radial; }
  double radius(double theta) const;
  double slope(double theta) const;
  /// 1 / L, constant along the curve.
  double beltrami(double theta) const;
  /// Throws DomainError for radial segments, which theta cannot parametrize.
  GeodesicCurve sample(double theta_begin, double theta_end, int n) const;

 private:
  friend EmbeddingTrajectory embedding_trajectory(MetricKind, const GeodesicCurve&, int);
  explicit SjoqvistGeodesic(const SjoqvistGeodesicParams& p) : p_(p) {}
  void require_angular() const;
  SjoqvistGeodesicParams p_;
};

/// Convenience wrappers named after the operations they implement.
inline BuresGeodesic bures_geodesic_ivp(double ra, double ra_prime, double theta_a) {
  return BuresGeodesic::from_initial(ra, ra_prime, theta_a);
}
inline SjoqvistGeodesic sjoqvist_geodesic_ivp(double ra, double ra_prime, double theta_a) {
  return SjoqvistGeodesic::from_initial(ra, ra_prime, theta_a);
}
inline SjoqvistGeodesic sjoqvist_geodesic_bvp(double ra, double theta_a, double rb,
                                              double theta_b) {
  return SjoqvistGeodesic::from_endpoints(ra, theta_a, rb, theta_b);
}

/// Convert a sampled curve into path samples parametrized by theta.
std::vector<PathSample> to_path(const GeodesicCurve& curve);

/// Resample `curve` with `n_steps` intervals over its theta range and integrate the
/// embedding coordinates of `kind` along it.
EmbeddingTrajectory embedding_trajectory(MetricKind kind, const GeodesicCurve& curve, int n_steps);

// Great circles of the unit 3-sphere x0^2 + x.x = 1, which are the Bures
// geodesics in the embedding coordinates: x(s) = u cos s + v sin s with
// u = (cos chi, n sin chi), v = (sin xi, m cos xi), -(n.m) tan chi = tan xi.

struct GreatCircleParams {
  double chi = 0.0;
  double xi = 0.0;
  Vec3 n_hat = Vec3::UnitZ();
  Vec3 m_hat = Vec3::UnitX();

  EmbeddedPoint4 u() const;
  EmbeddedPoint4 v() const;
};

/// Builds consistent parameters, solving the orthogonality condition for xi.
/// `n` and `m` are normalized; they must be non-zero.
GreatCircleParams make_great_circle(double chi, const Vec3& n, const Vec3& m);

/// Throws DomainError when the parameters violate unit norms or orthogonality
/// beyond 1e-9.
EmbeddedPoint4 bures_great_circle(const GreatCircleParams& params, double s);

/// sqrt(1 - x0(s)^2): the Bloch radius along the great circle.
double great_circle_radius(const GreatCircleParams& params, double s);

// Independent check of the closed forms: fixed-step RK4 integration of the
// Euler-Lagrange equation of the planar length functional.

enum class OracleCoordinates {
  /// Integrate in chi = asin(r). The equation stays regular where Bures geodesics
  /// touch r = 1, so the oracle can follow them across the pure-state boundary.
  Hyperspherical,
  /// Integrate r(theta) directly; singular at r = 1.
  Radial,
};

struct OracleOptions {
  int n_steps = 10000;
  /// Integration stops when r leaves (margin, 1 - margin) (Radial) or chi leaves
  /// (margin, pi - margin) (Hyperspherical).
  double margin = 1e-6;
  OracleCoordinates coordinates = OracleCoordinates::Hyperspherical;
};

struct OracleResult {
  MetricKind kind = MetricKind::Bures;
  std::vector<double> theta;
  std::vector<double> r;
  /// True when a step left the integration domain; samples stop there.
  bool left_domain = false;
  /// Sup-norm |r_rk4 - r_closed_form| over the returned samples.
  double max_deviation = 0.0;
};

/// Requires 0 < ra < 1 and n_steps >= 1.
OracleResult geodesic_oracle(MetricKind kind, double ra, double ra_prime, double theta_a,
                             double theta_end, const OracleOptions& options = {});

}  // namespace blochgeo
