#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace blochgeo {

using Vec3 = Eigen::Vector3d;
using Mat2c = Eigen::Matrix2cd;

/// Slack allowed on state invariants (norm, trace, hermiticity, positivity).
inline constexpr double kStateTolerance = 1e-12;
/// Largest |p_y| accepted for a vector said to lie in the xz-plane.
inline constexpr double kPlaneTolerance = 1e-9;

/// Raised when an argument lies outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Pauli matrices (sigma_x, sigma_y, sigma_z).
const std::array<Mat2c, 3>& pauli();

/// Bloch vector of a qubit state; ||p|| <= 1 within kStateTolerance.
///
/// The zero vector is the maximally mixed state, unit vectors are pure states.
class BlochVector {
 public:
  BlochVector() = default;
  BlochVector(double px, double py, double pz);
  explicit BlochVector(const Vec3& p);

  double x() const { return p_.x(); }
  double y() const { return p_.y(); }
  double z() const { return p_.z(); }
  const Vec3& vec() const { return p_; }
  double norm() const { return p_.norm(); }
  bool is_pure(double tol = kStateTolerance) const;

 private:
  Vec3 p_ = Vec3::Zero();
};

/// (p, theta, phi) with theta measured from +z and phi from +x.
struct SphericalState {
  double p = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Polar coordinates (r, theta) of a state in the xz-plane, theta from +z.
struct PlanarState {
  double r = 0.0;
  double theta = 0.0;

  friend bool operator==(const PlanarState&, const PlanarState&) = default;
};

/// Validated 2x2 density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Throws DomainError unless `m` satisfies the invariants within kStateTolerance.
  static DensityMatrix from_matrix(const Mat2c& m);

  const Mat2c& matrix() const { return m_; }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }
  double purity() const;       // tr(rho^2)
  double determinant() const;  // real for Hermitian input
  Eigen::Vector2d eigenvalues() const;

 private:
  explicit DensityMatrix(const Mat2c& m) : m_(m) {}
  Mat2c m_;
};

DensityMatrix bloch_to_density(const BlochVector& p);
BlochVector density_to_bloch(const DensityMatrix& rho);

SphericalState to_spherical(const BlochVector& p);
BlochVector to_bloch(const SphericalState& s);

/// Requires |p_y| <= kPlaneTolerance; rotate the pair into the plane first otherwise.
/// theta = atan2(p_x, p_z), so theta lies in [0, pi] whenever p_x >= 0.
PlanarState to_planar(const BlochVector& p);
BlochVector to_bloch(const PlanarState& s);

}  // namespace blochgeo
