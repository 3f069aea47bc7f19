#include "blochgeo/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace blochgeo {

namespace {

using cd = std::complex<double>;

void require_physical(const Vec3& p) {
  if (!p.allFinite()) {
    throw DomainError("Bloch vector has non-finite components");
  }
  if (p.norm() > 1.0 + kStateTolerance) {
    throw DomainError("unphysical state: Bloch vector norm " + std::to_string(p.norm()) +
                      " exceeds 1");
  }
}

}  // namespace

const std::array<Mat2c, 3>& pauli() {
  static const std::array<Mat2c, 3> sigma = [] {
    std::array<Mat2c, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, cd(0, -1), cd(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

BlochVector::BlochVector(double px, double py, double pz) : BlochVector(Vec3(px, py, pz)) {}

BlochVector::BlochVector(const Vec3& p) : p_(p) { require_physical(p_); }

bool BlochVector::is_pure(double tol) const { return std::abs(norm() - 1.0) <= tol; }

DensityMatrix DensityMatrix::from_matrix(const Mat2c& m) {
  if (!m.allFinite()) {
    throw DomainError("density matrix has non-finite entries");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - 1.0) > kStateTolerance) {
    throw DomainError("density matrix trace differs from 1");
  }
  DensityMatrix rho(m);
  if (rho.eigenvalues().minCoeff() < -kStateTolerance) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
  return rho;
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::determinant() const { return m_.determinant().real(); }

Eigen::Vector2d DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat2c> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DensityMatrix bloch_to_density(const BlochVector& p) {
  const auto& s = pauli();
  Mat2c m = Mat2c::Identity();
  for (int i = 0; i < 3; ++i) m += p.vec()(i) * s[i];
  return DensityMatrix::from_matrix(0.5 * m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  const auto& s = pauli();
  Vec3 p;
  for (int i = 0; i < 3; ++i) p(i) = (rho.matrix() * s[i]).trace().real();
  return BlochVector(p);
}

SphericalState to_spherical(const BlochVector& p) {
  const double r = p.norm();
  if (r == 0.0) return {};
  double phi = std::atan2(p.y(), p.x());
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {r, std::acos(std::clamp(p.z() / r, -1.0, 1.0)), phi};
}

BlochVector to_bloch(const SphericalState& s) {
  const double st = std::sin(s.theta);
  return BlochVector(s.p * st * std::cos(s.phi), s.p * st * std::sin(s.phi),
                     s.p * std::cos(s.theta));
}

PlanarState to_planar(const BlochVector& p) {
  if (std::abs(p.y()) > kPlaneTolerance) {
    throw DomainError("state is not in the xz-plane (|p_y| = " + std::to_string(std::abs(p.y())) +
                      "); reduce the pair to the plane first");
  }
  return {std::hypot(p.x(), p.z()), std::atan2(p.x(), p.z())};
}

BlochVector to_bloch(const PlanarState& s) {
  return BlochVector(s.r * std::sin(s.theta), 0.0, s.r * std::cos(s.theta));
}

}  // namespace blochgeo
