#pragma once

// Reference computations written independently of the library: plain scalar
// arithmetic on 2x2 matrices and Bloch vectors, no Eigen solvers.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;
using M2 = std::array<cd, 4>;  // row-major
using V3 = std::array<double, 3>;

inline constexpr double pi = std::numbers::pi;

inline M2 density(const V3& p) {
  return {cd(0.5 * (1 + p[2])), cd(0.5 * p[0], -0.5 * p[1]), cd(0.5 * p[0], 0.5 * p[1]),
          cd(0.5 * (1 - p[2]))};
}

inline M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline cd trace(const M2& a) { return a[0] + a[3]; }
inline cd det(const M2& a) { return a[0] * a[3] - a[1] * a[2]; }

// Square root of a 2x2 positive semidefinite matrix:
// sqrt(M) = (M + s I) / t with s = sqrt(det M), t = sqrt(tr M + 2 s).
inline M2 sqrt_psd(const M2& m) {
  const double s = std::sqrt(std::max(0.0, det(m).real()));
  const double t = std::sqrt(std::max(0.0, trace(m).real() + 2.0 * s));
  if (t == 0.0) return {0, 0, 0, 0};
  return {(m[0] + s) / t, m[1] / t, m[2] / t, (m[3] + s) / t};
}

// Uhlmann fidelity from the 2x2 square-root identity above.
inline double fidelity(const V3& a, const V3& b) {
  const M2 sa = sqrt_psd(density(a));
  const double root = trace(sqrt_psd(mul(mul(sa, density(b)), sa))).real();
  return root * root;
}

inline double bures(const V3& a, const V3& b) {
  return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1.0 - std::sqrt(fidelity(a, b))));
}

// Planar state (r, theta) as a Bloch vector in the xz-plane.
inline V3 planar(double r, double theta) { return {r * std::sin(theta), 0.0, r * std::cos(theta)}; }

inline double sjoqvist(double ra, double ta, double rb, double tb) {
  const double dchi = std::asin(rb) - std::asin(ra);
  return 0.5 * std::sqrt((tb - ta) * (tb - ta) + dchi * dchi);
}

// Rodrigues: R v = v cos a + (n x v) sin a + n (n.v)(1 - cos a), column by column.
inline std::array<V3, 3> rodrigues_columns(double a, const V3& n) {
  std::array<V3, 3> cols{};
  for (int j = 0; j < 3; ++j) {
    V3 e{0, 0, 0};
    e[j] = 1.0;
    const V3 cross{n[1] * e[2] - n[2] * e[1], n[2] * e[0] - n[0] * e[2], n[0] * e[1] - n[1] * e[0]};
    const double dot = n[j];
    for (int i = 0; i < 3; ++i) {
      cols[j][i] = e[i] * std::cos(a) + cross[i] * std::sin(a) + n[i] * dot * (1.0 - std::cos(a));
    }
  }
  return cols;
}

// Geodesic equations in chi = asin(r) for L = sqrt(chi'^2 + g(chi)), from the
// Euler-Lagrange equation chi'' = g'/2 + (g'/g) chi'^2.
//   Bures:    g = sin^2 chi
//   Sjoqvist: g = 1
struct Rk4Result {
  double sup_deviation = 0.0;
  bool stayed_inside = true;
};

template <typename ClosedForm>
Rk4Result rk4_chi(bool bures, double ra, double ra_prime, double t0, double t1, int steps,
                  ClosedForm closed) {
  auto acc = [&](double chi, double v) {
    if (!bures) return 0.0;
    const double s = std::sin(chi), c = std::cos(chi);
    return s * c + 2.0 * c / s * v * v;
  };
  double chi = std::asin(ra), v = ra_prime / std::sqrt(1.0 - ra * ra);
  const double h = (t1 - t0) / steps;
  Rk4Result out;
  for (int i = 1; i <= steps; ++i) {
    const double k1x = v, k1v = acc(chi, v);
    const double k2x = v + 0.5 * h * k1v, k2v = acc(chi + 0.5 * h * k1x, v + 0.5 * h * k1v);
    const double k3x = v + 0.5 * h * k2v, k3v = acc(chi + 0.5 * h * k2x, v + 0.5 * h * k2v);
    const double k4x = v + h * k3v, k4v = acc(chi + h * k3x, v + h * k3v);
    chi += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (!(chi > 1e-6 && chi < pi - 1e-6)) {
      out.stayed_inside = false;
      return out;
    }
    out.sup_deviation = std::max(out.sup_deviation, std::abs(std::sin(chi) - closed(t0 + i * h)));
  }
  return out;
}

}  // namespace oracle
