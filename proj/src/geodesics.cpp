#include "blochgeo/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace blochgeo {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Below this, 1 - r^2 has lost too many digits to divide by.
constexpr double kBoundarySlack = 1e-12;

void require_open_unit(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0, 1)");
  }
}

// Number of integers k with lo < k * period + shift < hi.
int count_crossings(double a, double b, double period, double shift) {
  const double lo = (std::min(a, b) - shift) / period;
  const double hi = (std::max(a, b) - shift) / period;
  return static_cast<int>(std::ceil(hi) - std::floor(lo)) - 1;
}

// Cumulative composite Simpson rule on [theta_k, theta_{k+1}] with the midpoint
// evaluated from the closed form.
template <typename Radius, typename Slope, typename Integrand>
std::vector<CurveSample> sample_curve(double theta_begin, double theta_end, int n, Radius radius,
                                      Slope slope, Integrand lagrangian) {
  if (n < 1) throw DomainError("a sampled curve needs at least one interval");
  std::vector<CurveSample> out;
  out.reserve(n + 1);
  const double h = (theta_end - theta_begin) / n;
  double arc = 0.0;
  double f_prev = lagrangian(theta_begin);
  out.push_back({theta_begin, radius(theta_begin), slope(theta_begin), 0.0});
  for (int k = 1; k <= n; ++k) {
    const double t0 = theta_begin + (k - 1) * h;
    const double t1 = (k == n) ? theta_end : theta_begin + k * h;
    const double f_mid = lagrangian(0.5 * (t0 + t1));
    const double f_next = lagrangian(t1);
    arc += 0.5 * std::abs(t1 - t0) / 6.0 * (f_prev + 4.0 * f_mid + f_next);
    out.push_back({t1, radius(t1), slope(t1), arc});
    f_prev = f_next;
  }
  return out;
}

// Euler-Lagrange acceleration for L = sqrt(f(q) q'^2 + g(q)):
//   q'' = -f'/(2f) q'^2 + g'/(2f) + (g'/g) q'^2.
struct ChartCoefficients {
  double f, df, g, dg;
};

double el_acceleration(const ChartCoefficients& c, double dq) {
  return -c.df / (2.0 * c.f) * dq * dq + c.dg / (2.0 * c.f) + c.dg / c.g * dq * dq;
}

ChartCoefficients radial_chart(MetricKind kind, double r) {
  const double w = 1.0 - r * r;
  const double f = 1.0 / w;
  const double df = 2.0 * r / (w * w);
  if (kind == MetricKind::Bures) return {f, df, r * r, 2.0 * r};
  return {f, df, 1.0, 0.0};
}

ChartCoefficients hyperspherical_chart(MetricKind kind, double chi) {
  if (kind == MetricKind::Bures) {
    const double s = std::sin(chi);
    return {1.0, 0.0, s * s, 2.0 * s * std::cos(chi)};
  }
  return {1.0, 0.0, 1.0, 0.0};
}

}  // namespace

double planar_lagrangian(MetricKind kind, double r, double dr) {
  if (!is_quantum(kind)) throw DomainError("planar Lagrangian needs a quantum metric");
  const double base = kind == MetricKind::Bures ? r * r : 1.0;
  if (dr == 0.0) return std::sqrt(base);
  if (!(r < 1.0)) throw DomainError("radial motion at r = 1 is outside the chart");
  return std::sqrt(base + dr * dr / (1.0 - r * r));
}

// --- Bures -------------------------------------------------------------------

BuresGeodesic BuresGeodesic::from_initial(double ra, double ra_prime, double theta_a) {
  require_open_unit(ra, "ra");
  if (!std::isfinite(ra_prime) || !std::isfinite(theta_a)) {
    throw DomainError("initial slope and angle must be finite");
  }
  BuresGeodesicParams p;
  p.ra = ra;
  p.ra_prime = ra_prime;
  p.theta_a = theta_a;
  const double ra2 = ra * ra;
  p.a_b2 = 1.0 / ra2 + (ra_prime / ra) * (ra_prime / ra) / (ra2 * (1.0 - ra2));
  p.c_b = 1.0 / std::sqrt(p.a_b2);
  p.phase = ra_prime == 0.0 ? kHalfPi : std::atan(std::abs((1.0 - ra2) * ra / ra_prime));
  p.direction = ra_prime < 0.0 ? -1.0 : 1.0;
  return BuresGeodesic(p);
}

double BuresGeodesic::argument(double theta) const {
  return p_.phase - p_.direction * (theta - p_.theta_a);
}

double BuresGeodesic::radius(double theta) const {
  const double u = argument(theta);
  const double c = std::cos(u), s = std::sin(u);
  return 1.0 / std::sqrt(c * c + p_.a_b2 * s * s);
}

double BuresGeodesic::slope(double theta) const {
  const double u = argument(theta);
  const double c = std::cos(u), s = std::sin(u);
  const double d = c * c + p_.a_b2 * s * s;
  return p_.direction * (p_.a_b2 - 1.0) * s * c / (d * std::sqrt(d));
}

double BuresGeodesic::speed_term(double theta) const {
  const double u = argument(theta);
  const double c = std::cos(u), s = std::sin(u);
  const double d = c * c + p_.a_b2 * s * s;
  return (p_.a_b2 - 1.0) * c * c / (d * d);
}

double BuresGeodesic::beltrami(double theta) const {
  const double r = radius(theta);
  return r * r / std::sqrt(r * r + speed_term(theta));
}

double BuresGeodesic::radius_tan_form(double theta) const {
  const double t = std::tan(argument(theta));
  return std::sqrt((1.0 + t * t) / (1.0 + p_.a_b2 * t * t));
}

GeodesicCurve BuresGeodesic::sample(double theta_begin, double theta_end, int n) const {
  GeodesicCurve curve;
  curve.kind = MetricKind::Bures;
  curve.params = p_;
  auto lagrangian = [this](double t) {
    const double r = radius(t);
    if (1.0 - r * r > kBoundarySlack) return planar_lagrangian(MetricKind::Bures, r, slope(t));
    return std::sqrt(r * r + speed_term(t));
  };
  curve.samples = sample_curve(
      theta_begin, theta_end, n, [this](double t) { return radius(t); },
      [this](double t) { return slope(t); }, lagrangian);
  const double u0 = argument(theta_begin), u1 = argument(theta_end);
  curve.turning_points = count_crossings(u0, u1, kHalfPi, 0.0);
  curve.boundary_contacts = count_crossings(u0, u1, std::numbers::pi, 0.0);
  return curve;
}

// --- Sjoqvist ----------------------------------------------------------------

SjoqvistGeodesic SjoqvistGeodesic::from_initial(double ra, double ra_prime, double theta_a) {
  require_open_unit(ra, "ra");
  if (!std::isfinite(ra_prime) || !std::isfinite(theta_a)) {
    throw DomainError("initial slope and angle must be finite");
  }
  SjoqvistGeodesicParams p;
  p.ra = ra;
  p.rb = ra;
  p.ra_prime = ra_prime;
  p.theta_a = theta_a;
  p.rate = ra_prime / std::sqrt(1.0 - ra * ra);
  p.offset = std::asin(ra) - p.rate * theta_a;
  p.k = p.rate * p.rate;
  p.c_s = 1.0 / std::sqrt(1.0 + p.k);
  return SjoqvistGeodesic(p);
}

SjoqvistGeodesic SjoqvistGeodesic::from_endpoints(double ra, double theta_a, double rb,
                                                  double theta_b) {
  for (double r : {ra, rb}) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("endpoint radii must lie in (0, 1]");
  }
  if (!std::isfinite(theta_a) || !std::isfinite(theta_b)) {
    throw DomainError("endpoint angles must be finite");
  }
  SjoqvistGeodesicParams p;
  p.ra = ra;
  p.rb = rb;
  p.theta_a = theta_a;
  const double sa = std::asin(ra), sb = std::asin(rb);
  if (theta_a == theta_b) {
    if (ra == rb) throw DomainError("geodesic endpoints coincide");
    p.radial = true;
    p.k = std::numeric_limits<double>::infinity();
    p.c_s = 0.0;
    return SjoqvistGeodesic(p);
  }
  const double span = theta_b - theta_a;
  p.rate = (sb - sa) / span;
  p.offset = 0.5 * (sa + sb) - 0.5 * (theta_a + theta_b) / span * (sb - sa);
  p.ra_prime = p.rate * std::sqrt(1.0 - ra * ra);
  p.k = p.rate * p.rate;
  p.c_s = 1.0 / std::sqrt(1.0 + p.k);
  return SjoqvistGeodesic(p);
}

void SjoqvistGeodesic::require_angular() const {
  if (p_.radial) throw DomainError("radial Sjoqvist segment is not a function of theta");
}

double SjoqvistGeodesic::radius(double theta) const {
  require_angular();
  return std::sin(p_.rate * theta + p_.offset);
}

double SjoqvistGeodesic::slope(double theta) const {
  require_angular();
  return p_.rate * std::cos(p_.rate * theta + p_.offset);
}

double SjoqvistGeodesic::beltrami(double theta) const {
  const double r = radius(theta);
  if (1.0 - r * r > kBoundarySlack) {
    return 1.0 / planar_lagrangian(MetricKind::Sjoqvist, r, slope(theta));
  }
  return p_.c_s;
}

GeodesicCurve SjoqvistGeodesic::sample(double theta_begin, double theta_end, int n) const {
  require_angular();
  GeodesicCurve curve;
  curve.kind = MetricKind::Sjoqvist;
  curve.params = p_;
  auto lagrangian = [this](double t) {
    const double r = radius(t);
    if (1.0 - r * r > kBoundarySlack) return planar_lagrangian(MetricKind::Sjoqvist, r, slope(t));
    return std::sqrt(1.0 + p_.k);
  };
  curve.samples = sample_curve(
      theta_begin, theta_end, n, [this](double t) { return radius(t); },
      [this](double t) { return slope(t); }, lagrangian);
  const double x0 = p_.rate * theta_begin + p_.offset, x1 = p_.rate * theta_end + p_.offset;
  if (p_.rate != 0.0) {
    curve.turning_points = count_crossings(x0, x1, std::numbers::pi, kHalfPi);
    curve.boundary_contacts = curve.turning_points;
  }
  // The argument stays in (0, pi) exactly when r stays positive.
  curve.reaches_origin = std::min(x0, x1) <= 0.0 || std::max(x0, x1) >= std::numbers::pi;
  return curve;
}

// --- Embedding along curves ----------------------------------------------------

std::vector<PathSample> to_path(const GeodesicCurve& curve) {
  std::vector<PathSample> path;
  path.reserve(curve.samples.size());
  for (const auto& c : curve.samples) path.push_back({c.theta, c.r, c.theta, c.dr_dtheta, 1.0});
  return path;
}

EmbeddingTrajectory embedding_trajectory(MetricKind kind, const GeodesicCurve& curve,
                                         int n_steps) {
  if (curve.samples.size() < 2) throw DomainError("curve has no theta range to resample");
  const double t0 = curve.samples.front().theta;
  const double t1 = curve.samples.back().theta;
  const GeodesicCurve fine = std::visit(
      [&](const auto& p) -> GeodesicCurve {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BuresGeodesicParams>) {
          return BuresGeodesic(p).sample(t0, t1, n_steps);
        } else {
          return SjoqvistGeodesic(p).sample(t0, t1, n_steps);
        }
      },
      curve.params);
  const auto path = to_path(fine);
  return embedding_trajectory(kind, std::span<const PathSample>(path));
}

// --- Great circles -----------------------------------------------------------

EmbeddedPoint4 GreatCircleParams::u() const { return {std::cos(chi), n_hat * std::sin(chi)}; }

EmbeddedPoint4 GreatCircleParams::v() const { return {std::sin(xi), m_hat * std::cos(xi)}; }

GreatCircleParams make_great_circle(double chi, const Vec3& n, const Vec3& m) {
  if (n.norm() == 0.0 || m.norm() == 0.0) throw DomainError("great-circle axes must be non-zero");
  GreatCircleParams g;
  g.chi = chi;
  g.n_hat = n.normalized();
  g.m_hat = m.normalized();
  // tan(xi) = -(n.m) tan(chi), written to stay finite at chi = pi/2.
  g.xi = std::atan2(-g.n_hat.dot(g.m_hat) * std::sin(chi), std::cos(chi));
  return g;
}

EmbeddedPoint4 bures_great_circle(const GreatCircleParams& g, double s) {
  constexpr double tol = 1e-9;
  if (std::abs(g.n_hat.norm() - 1.0) > tol || std::abs(g.m_hat.norm() - 1.0) > tol) {
    throw DomainError("great-circle axes must be unit vectors");
  }
  const auto u = g.u();
  const auto v = g.v();
  if (std::abs(u.x0 * v.x0 + u.x.dot(v.x)) > tol) {
    throw DomainError("great-circle parameters violate -(n.m) tan(chi) = tan(xi)");
  }
  const double c = std::cos(s), sn = std::sin(s);
  return {u.x0 * c + v.x0 * sn, u.x * c + v.x * sn};
}

double great_circle_radius(const GreatCircleParams& g, double s) {
  const double x0 = bures_great_circle(g, s).x0;
  return std::sqrt(std::max(0.0, 1.0 - x0 * x0));
}

// --- RK4 oracle ----------------------------------------------------------------

OracleResult geodesic_oracle(MetricKind kind, double ra, double ra_prime, double theta_a,
                             double theta_end, const OracleOptions& options) {
  if (!is_quantum(kind)) throw DomainError("oracle needs a quantum metric");
  require_open_unit(ra, "ra");
  if (options.n_steps < 1) throw DomainError("oracle needs at least one step");

  const bool hyper = options.coordinates == OracleCoordinates::Hyperspherical;
  auto chart = [&](double q) { return hyper ? hyperspherical_chart(kind, q) : radial_chart(kind, q); };
  auto to_radius = [&](double q) { return hyper ? std::sin(q) : q; };
  auto inside = [&](double q) {
    const double hi = hyper ? std::numbers::pi - options.margin : 1.0 - options.margin;
    return q > options.margin && q < hi;
  };

  using State = std::array<double, 2>;
  auto rhs = [&](const State& y) -> State { return {y[1], el_acceleration(chart(y[0]), y[1])}; };

  State y = hyper ? State{std::asin(ra), ra_prime / std::sqrt(1.0 - ra * ra)} : State{ra, ra_prime};
  const double h = (theta_end - theta_a) / options.n_steps;

  OracleResult out;
  out.kind = kind;
  out.theta.reserve(options.n_steps + 1);
  out.r.reserve(options.n_steps + 1);
  out.theta.push_back(theta_a);
  out.r.push_back(ra);

  for (int i = 0; i < options.n_steps; ++i) {
    const State k1 = rhs(y);
    const State k2 = rhs({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const State k3 = rhs({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const State k4 = rhs({y[0] + h * k3[0], y[1] + h * k3[1]});
    const State next{y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                     y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
    if (!std::isfinite(next[0]) || !inside(next[0])) {
      out.left_domain = true;
      break;
    }
    y = next;
    out.theta.push_back(theta_a + (i + 1) * h);
    out.r.push_back(to_radius(y[0]));
  }

  auto closed = [&](double t) {
    if (kind == MetricKind::Bures) return BuresGeodesic::from_initial(ra, ra_prime, theta_a).radius(t);
    return SjoqvistGeodesic::from_initial(ra, ra_prime, theta_a).radius(t);
  };
  for (std::size_t i = 0; i < out.theta.size(); ++i) {
    out.max_deviation = std::max(out.max_deviation, std::abs(out.r[i] - closed(out.theta[i])));
  }
  return out;
}

}  // namespace blochgeo
