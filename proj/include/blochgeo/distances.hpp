#pragma once

#include <string>

#include "blochgeo/metrics.hpp"

namespace blochgeo {

/// Qubit fidelity tr(rho1 rho2) + 2 sqrt(det rho1 det rho2), clamped to [0, 1].
/// Rejects determinants below -1e-12.
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 through Hermitian eigendecompositions.
/// Works for any dimension the matrix type allows and so serves as a
/// cross-check on the qubit shortcut above.
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Square root of a Hermitian positive semidefinite matrix. Eigenvalues in
/// [-1e-12, 0) are treated as zero; anything more negative is rejected.
Mat2c sqrtm_psd(const Mat2c& m);

/// Bures length between two states of the xz-plane, valid on the closed ball.
double bures_distance(const PlanarState& a, const PlanarState& b);

/// sqrt(2) sqrt(1 - tr sqrt(sqrt(rho1) rho2 sqrt(rho1))) for arbitrary states.
double bures_distance_general(const DensityMatrix& rho1, const DensityMatrix& rho2);

enum class AngleConvention {
  /// Use theta_b - theta_a as given.
  AsGiven,
  /// Replace |theta_b - theta_a| by its distance to the nearest multiple of 2 pi,
  /// which picks the shorter way around the great circle of the plane.
  Wrapped,
};

/// (1/2) sqrt(dtheta^2 + (asin rb - asin ra)^2). Radii below 1e-12 are rejected
/// because the metric is singular at the maximally mixed state.
double sjoqvist_distance(const PlanarState& a, const PlanarState& b,
                         AngleConvention convention = AngleConvention::AsGiven);

/// Cartesian point (x, z) of the xz-plane, used by the classical metrics.
struct Point2 {
  double x = 0.0;
  double z = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

Point2 to_point(const PlanarState& s);
PlanarState to_planar(const Point2& p);

double euclid_distance(const Point2& a, const Point2& b);
double taxicab_distance(const Point2& a, const Point2& b);

/// Distance between two planar states under any metric kind. The classical
/// metrics act on the Cartesian images (r sin theta, r cos theta).
double distance(MetricKind kind, const PlanarState& a, const PlanarState& b,
                AngleConvention convention = AngleConvention::AsGiven);

/// A computed distance together with the formula that produced it.
struct DistanceReport {
  MetricKind kind = MetricKind::Bures;
  PlanarState a;
  PlanarState b;
  double value = 0.0;
  std::string formula;
};

DistanceReport distance_report(MetricKind kind, const PlanarState& a, const PlanarState& b,
                               AngleConvention convention = AngleConvention::AsGiven);

/// Short description of the closed form used for `kind`.
std::string formula_id(MetricKind kind);

}  // namespace blochgeo
