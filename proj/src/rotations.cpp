#include "blochgeo/rotations.hpp"

#include <algorithm>
#include <cmath>

namespace blochgeo {

namespace {

using cd = std::complex<double>;

constexpr double kAxisTolerance = 1e-10;
constexpr double kGroupTolerance = 1e-12;
// Below this |p1 x z| the step-1 axis is undefined and p1 is already on the axis.
constexpr double kDegenerateAxis = 1e-12;

void require_unit_axis(const Vec3& n) {
  if (!n.allFinite() || std::abs(n.norm() - 1.0) > kAxisTolerance) {
    throw DomainError("rotation axis must be a unit vector");
  }
}

}  // namespace

SU2Matrix SU2Matrix::from_matrix(const Mat2c& m) {
  if (!m.allFinite()) throw DomainError("SU(2) matrix has non-finite entries");
  if ((m * m.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() > kGroupTolerance) {
    throw DomainError("matrix is not unitary");
  }
  if (std::abs(m.determinant() - 1.0) > kGroupTolerance) {
    throw DomainError("unitary matrix does not have determinant 1");
  }
  return SU2Matrix(m);
}

RotationMatrix3 RotationMatrix3::from_matrix(const Mat3& m) {
  if (!m.allFinite()) throw DomainError("rotation matrix has non-finite entries");
  if ((m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() > kGroupTolerance) {
    throw DomainError("matrix is not orthogonal");
  }
  if (std::abs(m.determinant() - 1.0) > kGroupTolerance) {
    throw DomainError("orthogonal matrix is not a proper rotation");
  }
  return RotationMatrix3(m);
}

RotationMatrix3 RotationMatrix3::operator*(const RotationMatrix3& other) const {
  return RotationMatrix3(m_ * other.m_);
}

SU2Matrix su2_from_axis_angle(double alpha, const Vec3& n_hat) {
  require_unit_axis(n_hat);
  const double c = std::cos(alpha / 2.0), s = std::sin(alpha / 2.0);
  const double nx = n_hat.x(), ny = n_hat.y(), nz = n_hat.z();
  Mat2c u;
  u << cd(c, -s * nz), cd(-s * ny, -s * nx),
       cd(s * ny, -s * nx), cd(c, s * nz);
  return SU2Matrix::from_matrix(u);
}

RotationMatrix3 rotation_from_axis_angle(double alpha, const Vec3& n_hat) {
  require_unit_axis(n_hat);
  const double c = std::cos(alpha), s = std::sin(alpha), t = 1.0 - c;
  const double x = n_hat.x(), y = n_hat.y(), z = n_hat.z();
  Mat3 m;
  m << c + x * x * t,     x * y * t - z * s, x * z * t + y * s,
       y * x * t + z * s, c + y * y * t,     y * z * t - x * s,
       z * x * t - y * s, z * y * t + x * s, c + z * z * t;
  return RotationMatrix3::from_matrix(m);
}

RotationMatrix3 so3_from_su2(const SU2Matrix& u) {
  const auto& sigma = pauli();
  const Mat2c& U = u.matrix();
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m(i, j) = 0.5 * (sigma[i] * U * sigma[j] * U.adjoint()).trace().real();
    }
  }
  return RotationMatrix3::from_matrix(m);
}

BlochVector rotate_state(const RotationMatrix3& r, const BlochVector& p) {
  Vec3 q = r * p.vec();
  // Orthogonal maps preserve the norm; keep pure states exactly on the sphere.
  const double n = q.norm();
  if (n > 1.0) q /= n;
  return BlochVector(q);
}

DensityMatrix rotate_state(const SU2Matrix& u, const DensityMatrix& rho) {
  Mat2c m = u.matrix() * rho.matrix() * u.matrix().adjoint();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix::from_matrix(m);
}

PlaneReduction reduce_to_xz_plane(const BlochVector& p1, const BlochVector& p2) {
  PlaneReduction out;

  const Vec3 axis = p1.vec().cross(Vec3::UnitZ());
  if (p1.norm() > 0.0 && axis.norm() >= kDegenerateAxis) {
    const double theta1 = std::acos(std::clamp(p1.z() / p1.norm(), -1.0, 1.0));
    out.step1 = rotation_from_axis_angle(theta1, axis.normalized());
  }
  const Vec3 p1p = out.step1 * p1.vec();
  const Vec3 p2p = out.step1 * p2.vec();

  const double rho = std::hypot(p2p.x(), p2p.y());
  const double r2 = p2p.norm();
  out.theta2_prime = r2 > 0.0 ? std::acos(std::clamp(p2p.z() / r2, -1.0, 1.0)) : 0.0;
  if (p2p.y() != 0.0 && rho > 0.0) {
    const double sign = p2p.y() > 0.0 ? 1.0 : -1.0;
    out.phi2_prime = sign * std::acos(std::clamp(p2p.x() / rho, -1.0, 1.0));
  }
  // A counterclockwise turn by -phi2' about z-hat.
  out.step2 = rotation_from_axis_angle(-out.phi2_prime, Vec3::UnitZ());
  out.r_total = out.step2 * out.step1;

  Vec3 q1 = out.step2 * p1p;
  Vec3 q2 = out.step2 * p2p;
  // The y-components vanish up to round-off; zero them so the results are exactly planar.
  q1.y() = 0.0;
  q2.y() = 0.0;
  auto clip = [](Vec3 v) {
    const double n = v.norm();
    return n > 1.0 ? Vec3(v / n) : v;
  };
  out.p1_new = BlochVector(clip(q1));
  out.p2_new = BlochVector(clip(q2));

  out.a = {out.p1_new.norm(), std::atan2(out.p1_new.x(), out.p1_new.z())};
  out.b = {out.p2_new.norm(), std::abs(std::atan2(out.p2_new.x(), out.p2_new.z()))};
  return out;
}

}  // namespace blochgeo
