#include "blochgeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace blochgeo {

namespace {

constexpr double kPuncture = 1e-12;

void require_quantum(MetricKind kind) {
  if (!is_quantum(kind)) {
    throw DomainError(std::string(to_string(kind)) + " has no line element on the Bloch ball");
  }
}

void require_open_ball(MetricKind kind, double p) {
  if (!(p < 1.0)) {
    throw DomainError("line element is singular at p = 1 (factor 1/(1 - p^2))");
  }
  if (kind == MetricKind::Sjoqvist && p < kPuncture) {
    throw DomainError("Sjoqvist metric has an essential singularity at p = 0");
  }
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Bures: return "bures";
    case MetricKind::Sjoqvist: return "sjoqvist";
    case MetricKind::Euclid: return "euclid";
    case MetricKind::Taxicab: return "taxicab";
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  for (auto k : {MetricKind::Bures, MetricKind::Sjoqvist, MetricKind::Euclid, MetricKind::Taxicab}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_quantum(MetricKind kind) {
  return kind == MetricKind::Bures || kind == MetricKind::Sjoqvist;
}

Vec3 to_cartesian_displacement(const SphericalState& s, const SphericalDisplacement& d) {
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  const double sf = std::sin(s.phi), cf = std::cos(s.phi);
  const Vec3 e_r(st * cf, st * sf, ct);
  const Vec3 e_theta(ct * cf, ct * sf, -st);
  const Vec3 e_phi(-sf, cf, 0.0);
  return d.dp * e_r + s.p * d.dtheta * e_theta + s.p * st * d.dphi * e_phi;
}

SphericalDisplacement to_spherical_displacement(const SphericalState& s, const Vec3& dp) {
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  const double sf = std::sin(s.phi), cf = std::cos(s.phi);
  if (s.p <= 0.0 || st == 0.0) {
    throw DomainError("spherical chart is singular at the origin and on the z-axis");
  }
  const Vec3 e_r(st * cf, st * sf, ct);
  const Vec3 e_theta(ct * cf, ct * sf, -st);
  const Vec3 e_phi(-sf, cf, 0.0);
  return {e_r.dot(dp), e_theta.dot(dp) / s.p, e_phi.dot(dp) / (s.p * st)};
}

double line_element_cartesian(MetricKind kind, const BlochVector& p, const Vec3& dp) {
  require_quantum(kind);
  const double p2 = p.vec().squaredNorm();
  require_open_ball(kind, std::sqrt(p2));
  const double radial = p.vec().dot(dp);
  const double dpdp = dp.squaredNorm();
  if (kind == MetricKind::Bures) {
    return 0.25 * (radial * radial / (1.0 - p2) + dpdp);
  }
  return 0.25 * ((2.0 * p2 - 1.0) * radial * radial / (p2 * p2 * (1.0 - p2)) + dpdp / p2);
}

double line_element_spherical(MetricKind kind, const SphericalState& s,
                              const SphericalDisplacement& d) {
  require_quantum(kind);
  require_open_ball(kind, s.p);
  const double st = std::sin(s.theta);
  const double omega = d.dtheta * d.dtheta + st * st * d.dphi * d.dphi;
  const double radial = d.dp * d.dp / (1.0 - s.p * s.p);
  if (kind == MetricKind::Bures) return 0.25 * (radial + s.p * s.p * omega);
  return 0.25 * (radial + omega);
}

double line_element_hyperspherical(MetricKind kind, double chi, double theta,
                                   const HypersphericalDisplacement& d) {
  require_quantum(kind);
  if (!(chi > 0.0 && chi <= std::numbers::pi / 2)) {
    throw DomainError("hyperspherical angle must lie in (0, pi/2]");
  }
  const double st = std::sin(theta);
  const double omega = d.dtheta * d.dtheta + st * st * d.dphi * d.dphi;
  if (kind == MetricKind::Bures) {
    const double sc = std::sin(chi);
    return d.dchi * d.dchi + sc * sc * omega;
  }
  return d.dchi * d.dchi + omega;
}

EmbeddedPoint4 embed_extrinsic(const SphericalState& s) {
  if (s.p < 0.0 || s.p > 1.0 + kStateTolerance) {
    throw DomainError("embedding requires p in [0, 1]");
  }
  const double p = std::min(s.p, 1.0);
  return {std::sqrt(1.0 - p * p), to_bloch(SphericalState{p, s.theta, s.phi}).vec()};
}

ExtrinsicWeights extrinsic_weights(MetricKind kind, double p) {
  require_quantum(kind);
  if (kind == MetricKind::Bures) return {1.0, 1.0};
  if (p < kPuncture) {
    throw DomainError("Sjoqvist metric has an essential singularity at p = 0");
  }
  const double p2 = p * p;
  return {(2.0 * p2 - 1.0) / (p2 * p2), 1.0 / p2};
}

double extrinsic_line_element(MetricKind kind, double p, double dx0, const Vec3& dx) {
  const auto w = extrinsic_weights(kind, p);
  return w.temporal * dx0 * dx0 + w.spatial * dx.squaredNorm();
}

EmbeddingTrajectory embedding_trajectory(MetricKind kind, std::span<const PathSample> path) {
  require_quantum(kind);
  EmbeddingTrajectory out;
  out.kind = kind;
  if (path.empty()) return out;

  const bool sjoqvist = kind == MetricKind::Sjoqvist;

  // Integrands at one sample: spatial vector and (Sjoqvist) temporal scalar.
  auto integrand = [&](const PathSample& q) {
    const Vec3 phat(std::sin(q.theta), 0.0, std::cos(q.theta));
    const Vec3 dphat = Vec3(std::cos(q.theta), 0.0, -std::sin(q.theta)) * q.dtheta_ds;
    if (!sjoqvist) {
      // sin(chi) = p.
      return std::pair<Vec3, double>(q.r * dphat, 0.0);
    }
    if (q.r < kPuncture) {
      throw DomainError("Sjoqvist embedding trajectory crosses p = 0");
    }
    const Vec3 dx = q.dr_ds * phat + q.r * dphat;
    double dx0 = 0.0;
    if (q.dr_ds != 0.0) {
      if (!(q.r < 1.0)) throw DomainError("radial motion through p = 1 has no dx0/ds");
      dx0 = -q.r * q.dr_ds / std::sqrt(1.0 - q.r * q.r);
    }
    const double w0 = (2.0 * q.r * q.r - 1.0) / std::pow(q.r, 4);
    return std::pair<Vec3, double>(q.r * dx, std::sqrt(std::abs(w0)) * dx0);
  };

  const auto& first = path.front();
  out.s.push_back(first.s);
  out.spatial.push_back(Vec3(std::sin(first.theta), 0.0, std::cos(first.theta)) * first.r);
  if (sjoqvist) out.temporal.push_back(std::sqrt(std::max(0.0, 1.0 - first.r * first.r)));

  auto prev = integrand(first);
  const double pivot = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& q = path[k];
    const auto cur = integrand(q);
    const double h = q.s - path[k - 1].s;
    out.s.push_back(q.s);
    out.spatial.push_back(out.spatial.back() + 0.5 * h * (prev.first + cur.first));
    if (sjoqvist) {
      out.temporal.push_back(out.temporal.back() + 0.5 * h * (prev.second + cur.second));
      if ((path[k - 1].r - pivot) * (q.r - pivot) <= 0.0) out.crosses_signature_change = true;
    }
    prev = cur;
  }
  return out;
}

}  // namespace blochgeo
