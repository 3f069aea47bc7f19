#include "blochgeo/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blochgeo {

namespace {

constexpr double kEigenClamp = 1e-12;
constexpr double kSjoqvistPuncture = 1e-12;

void require_radius(const PlanarState& s, double lo, const char* what) {
  if (!std::isfinite(s.r) || !std::isfinite(s.theta)) {
    throw DomainError(std::string(what) + ": non-finite planar coordinates");
  }
  if (lo > 0.0 && s.r >= 0.0 && s.r < lo) {
    throw DomainError(std::string(what) + ": the metric is singular at r = 0 (maximally mixed state)");
  }
  if (s.r < 0.0 || s.r > 1.0 + kStateTolerance) {
    throw DomainError(std::string(what) + ": radius " + std::to_string(s.r) + " outside the ball");
  }
}

}  // namespace

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const double d1 = rho1.determinant();
  const double d2 = rho2.determinant();
  if (d1 < -kEigenClamp || d2 < -kEigenClamp) {
    throw DomainError("fidelity: density matrix with negative determinant");
  }
  const double overlap = (rho1.matrix() * rho2.matrix()).trace().real();
  const double f = overlap + 2.0 * std::sqrt(std::max(0.0, d1) * std::max(0.0, d2));
  return std::clamp(f, 0.0, 1.0);
}

Mat2c sqrtm_psd(const Mat2c& m) {
  Eigen::SelfAdjointEigenSolver<Mat2c> es(m);
  Eigen::Vector2d lambda = es.eigenvalues();
  for (int i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -kEigenClamp) {
      throw DomainError("matrix square root of a non-positive matrix");
    }
    lambda(i) = std::sqrt(std::max(0.0, lambda(i)));
  }
  const Mat2c& v = es.eigenvectors();
  return v * lambda.cast<std::complex<double>>().asDiagonal() * v.adjoint();
}

namespace {

double root_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const Mat2c s1 = sqrtm_psd(rho1.matrix());
  Mat2c inner = s1 * rho2.matrix() * s1;
  inner = 0.5 * (inner + inner.adjoint());  // symmetrize round-off
  return std::clamp(sqrtm_psd(inner).trace().real(), 0.0, 1.0);
}

}  // namespace

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const double f = root_fidelity(rho1, rho2);
  return f * f;
}

double bures_distance_general(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - root_fidelity(rho1, rho2)));
}

double bures_distance(const PlanarState& a, const PlanarState& b) {
  require_radius(a, 0.0, "bures_distance");
  require_radius(b, 0.0, "bures_distance");
  const double ra = std::min(a.r, 1.0), rb = std::min(b.r, 1.0);
  const double f = (1.0 + ra * rb * std::cos(a.theta - b.theta)) / 4.0 +
                   std::sqrt((1.0 - ra * ra) * (1.0 - rb * rb)) / 4.0;
  const double root = std::sqrt(std::max(0.0, 2.0 * f));
  return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - root));
}

double sjoqvist_distance(const PlanarState& a, const PlanarState& b, AngleConvention convention) {
  require_radius(a, kSjoqvistPuncture, "sjoqvist_distance");
  require_radius(b, kSjoqvistPuncture, "sjoqvist_distance");
  double dtheta = b.theta - a.theta;
  if (convention == AngleConvention::Wrapped) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    dtheta = std::abs(std::remainder(dtheta, two_pi));
  }
  const double dchi = std::asin(std::min(b.r, 1.0)) - std::asin(std::min(a.r, 1.0));
  return 0.5 * std::hypot(dtheta, dchi);
}

Point2 to_point(const PlanarState& s) { return {s.r * std::sin(s.theta), s.r * std::cos(s.theta)}; }

PlanarState to_planar(const Point2& p) { return {std::hypot(p.x, p.z), std::atan2(p.x, p.z)}; }

double euclid_distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.z - b.z); }

double taxicab_distance(const Point2& a, const Point2& b) {
  return std::abs(a.x - b.x) + std::abs(a.z - b.z);
}

double distance(MetricKind kind, const PlanarState& a, const PlanarState& b,
                AngleConvention convention) {
  switch (kind) {
    case MetricKind::Bures: return bures_distance(a, b);
    case MetricKind::Sjoqvist: return sjoqvist_distance(a, b, convention);
    case MetricKind::Euclid: return euclid_distance(to_point(a), to_point(b));
    case MetricKind::Taxicab: return taxicab_distance(to_point(a), to_point(b));
  }
  throw DomainError("unknown metric kind");
}

std::string formula_id(MetricKind kind) {
  switch (kind) {
    case MetricKind::Bures:
      return "bures-planar: sqrt2*sqrt(1-sqrt(2*((1+ra*rb*cos(dtheta))/4+sqrt((1-ra^2)(1-rb^2))/4)))";
    case MetricKind::Sjoqvist:
      return "sjoqvist-planar: 0.5*sqrt(dtheta^2+(asin(rb)-asin(ra))^2)";
    case MetricKind::Euclid: return "euclid: sqrt(dx^2+dz^2)";
    case MetricKind::Taxicab: return "taxicab: |dx|+|dz|";
  }
  return "unknown";
}

DistanceReport distance_report(MetricKind kind, const PlanarState& a, const PlanarState& b,
                               AngleConvention convention) {
  return {kind, a, b, distance(kind, a, b, convention), formula_id(kind)};
}

}  // namespace blochgeo
