#pragma once

#include "blochgeo/states.hpp"

namespace blochgeo {

using Mat3 = Eigen::Matrix3d;

/// Special unitary 2x2 matrix; unitary and unimodular within 1e-12.
class SU2Matrix {
 public:
  static SU2Matrix from_matrix(const Mat2c& m);
  const Mat2c& matrix() const { return m_; }
  SU2Matrix operator-() const { return SU2Matrix(-m_); }

 private:
  explicit SU2Matrix(const Mat2c& m) : m_(m) {}
  Mat2c m_;
};

/// Proper rotation of R^3; orthogonal with determinant 1 within 1e-12.
class RotationMatrix3 {
 public:
  RotationMatrix3() = default;
  static RotationMatrix3 from_matrix(const Mat3& m);
  static RotationMatrix3 identity() { return {}; }

  const Mat3& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  RotationMatrix3 operator*(const RotationMatrix3& other) const;
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  explicit RotationMatrix3(const Mat3& m) : m_(m) {}
  Mat3 m_ = Mat3::Identity();
};

/// exp(-i alpha/2 n.sigma) = cos(alpha/2) I - i sin(alpha/2) n.sigma.
/// The axis must have unit norm within 1e-10.
SU2Matrix su2_from_axis_angle(double alpha, const Vec3& n_hat);

/// Counterclockwise rotation by alpha about n_hat (Rodrigues form, written out
/// entry by entry).
RotationMatrix3 rotation_from_axis_angle(double alpha, const Vec3& n_hat);

/// R_ij = (1/2) tr(sigma_i U sigma_j U^dagger). U and -U give the same rotation.
RotationMatrix3 so3_from_su2(const SU2Matrix& u);

BlochVector rotate_state(const RotationMatrix3& r, const BlochVector& p);
/// U rho U^dagger.
DensityMatrix rotate_state(const SU2Matrix& u, const DensityMatrix& rho);

/// Result of moving a pair of Bloch vectors into the xz-plane by a rotation.
struct PlaneReduction {
  RotationMatrix3 step1;    // sends p1 to r1 z-hat
  RotationMatrix3 step2;    // about z-hat, removes the y-component of p2
  RotationMatrix3 r_total;  // step2 * step1
  BlochVector p1_new;
  BlochVector p2_new;
  double theta2_prime = 0.0;  // polar angle of p2 after step 1
  double phi2_prime = 0.0;    // azimuth of p2 after step 1, in (-pi, pi]
  /// Planar coordinates of the reduced pair with theta_b reflected to |theta_b|.
  PlanarState a;
  PlanarState b;
};

/// Two rotations: first about (p1 x z)/|p1 x z| by the polar angle of p1, then
/// about z-hat by the azimuth of the rotated p2. Degenerate axes (p1 on the
/// z-axis or zero) make step 1 the identity; p2 on the z-axis after step 1 sets
/// the azimuth to zero.
PlaneReduction reduce_to_xz_plane(const BlochVector& p1, const BlochVector& p2);

}  // namespace blochgeo
