#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "blochgeo/distances.hpp"
#include "oracles.hpp"

using namespace blochgeo;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

TEST_CASE("fidelity edge values") {
  const auto mixed = bloch_to_density(BlochVector(0, 0, 0));
  CHECK(fidelity(mixed, mixed) == Approx(1.0));
  const auto up = bloch_to_density(BlochVector(0, 0, 1));
  const auto down = bloch_to_density(BlochVector(0, 0, -1));
  CHECK(fidelity(up, down) == Approx(0.0).scale(1.0));
  CHECK(bures_distance_general(up, down) == Approx(std::sqrt(2.0)));
  CHECK(bures_distance_general(up, up) == Approx(0.0).scale(1.0));
}

TEST_CASE("fidelity routes agree with the 2x2 square-root oracle") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    Vec3 a(g(rng), g(rng), g(rng)), b(g(rng), g(rng), g(rng));
    a = a.normalized() * std::cbrt(u(rng));
    b = b.normalized() * std::cbrt(u(rng));
    const auto ra = bloch_to_density(BlochVector(a)), rb = bloch_to_density(BlochVector(b));
    const double ref = oracle::fidelity({a.x(), a.y(), a.z()}, {b.x(), b.y(), b.z()});
    const double closed = (1 + a.dot(b)) / 2 + std::sqrt((1 - a.squaredNorm()) * (1 - b.squaredNorm())) / 2;
    CHECK(fidelity(ra, rb) == Approx(ref).epsilon(1e-12));
    CHECK(fidelity(ra, rb) == Approx(closed).epsilon(1e-12));
    CHECK(uhlmann_fidelity(ra, rb) == Approx(ref).epsilon(1e-10));
    CHECK(std::abs(std::sqrt(2.0) * std::sqrt(std::max(0.0, 1 - std::sqrt(fidelity(ra, rb)))) -
                   bures_distance_general(ra, rb)) < 1e-7);
  }
}

TEST_CASE("worked point sets") {
  CHECK(bures_distance({0.5, 0}, {0.5, kPi}) == Approx(0.5176).epsilon(1e-4));
  CHECK(bures_distance({0.125, 0}, {0.25, kPi}) == Approx(0.19).epsilon(0.02));
  CHECK(bures_distance({0.25, 0}, {0.25, kPi}) == Approx(0.25).epsilon(0.02));
  CHECK(sjoqvist_distance({0.5, 0}, {0.5, kPi}) == Approx(kPi / 2).epsilon(1e-15));
  CHECK(sjoqvist_distance({0.125, 0}, {0.25, kPi}) == Approx(1.5721).epsilon(3e-4));
  CHECK(sjoqvist_distance({0.25, 0}, {0.25, kPi}) == Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("planar Bures distance matches the matrix oracle") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double ra = u(rng), rb = u(rng), ta = kPi * u(rng), tb = kPi * u(rng);
    const double ref = oracle::bures(oracle::planar(ra, ta), oracle::planar(rb, tb));
    CHECK(bures_distance({ra, ta}, {rb, tb}) == Approx(ref).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("metric axioms on random planar pairs") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const PlanarState a{1 - u(rng), kPi * u(rng)}, b{1 - u(rng), kPi * u(rng)};
    for (auto k : {MetricKind::Bures, MetricKind::Sjoqvist, MetricKind::Euclid, MetricKind::Taxicab}) {
      const double d = distance(k, a, b);
      CHECK(d >= 0.0);
      CHECK(std::abs(d - distance(k, b, a)) <= 1e-12);
      CHECK(distance(k, a, a) == Approx(0.0).scale(1.0));
    }
    CHECK(bures_distance(a, b) <= sjoqvist_distance(a, b) + 1e-12);
    CHECK(euclid_distance(to_point(a), to_point(b)) <= taxicab_distance(to_point(a), to_point(b)) + 1e-15);
  }
}

TEST_CASE("pure-state limits") {
  for (double dt : {0.5, 0.2, 0.1, 0.01}) {
    CHECK(sjoqvist_distance({1, 0}, {1, dt}) == Approx(dt / 2).epsilon(1e-14));
    const double lb = bures_distance({1, 0}, {1, dt});
    CHECK(lb == Approx(2 * std::sin(dt / 4)).epsilon(1e-12));
    CHECK(std::abs(lb - dt / 2) <= std::pow(dt, 3) / 96.0 * (1 + 1e-9));
  }
}

TEST_CASE("Sjoqvist distance ignores a common radius") {
  for (double r1 = 0.05; r1 <= 1.0; r1 += 0.1) {
    for (double r2 = 0.05; r2 <= 1.0; r2 += 0.1) {
      CHECK(sjoqvist_distance({r1, 0}, {r1, 1.3}) == Approx(sjoqvist_distance({r2, 0}, {r2, 1.3})));
    }
  }
}

TEST_CASE("angle conventions") {
  const PlanarState a{0.5, 0.1}, b{0.5, 0.1 + 1.5 * kPi};
  CHECK(sjoqvist_distance(a, b) == Approx(0.75 * kPi));
  CHECK(sjoqvist_distance(a, b, AngleConvention::Wrapped) == Approx(0.25 * kPi));
  CHECK(sjoqvist_distance({0.5, 0}, {0.5, kPi}, AngleConvention::Wrapped) == Approx(kPi / 2));
}

TEST_CASE("Sjoqvist distance rejects the centre and radii outside the ball") {
  CHECK_THROWS_AS(sjoqvist_distance({0.0, 0}, {0.5, 1}), DomainError);
  CHECK_THROWS_AS(sjoqvist_distance({1e-13, 0}, {0.5, 1}), DomainError);
  CHECK_THROWS_AS(bures_distance({1.5, 0}, {0.5, 1}), DomainError);
  CHECK_NOTHROW(bures_distance({0.0, 0}, {0.5, 1}));
}

TEST_CASE("classical foils on the first point set") {
  const Point2 p1{0, 0}, p2{0, 1};
  const double c = (1 + std::sqrt(2.0)) / 4;
  const Point2 p3{c, c};
  CHECK(euclid_distance(p1, p2) == Approx(1.0));
  CHECK(euclid_distance(p1, p3) == Approx(0.8536).epsilon(1e-4));
  CHECK(taxicab_distance(p1, p2) == Approx(1.0));
  CHECK(taxicab_distance(p1, p3) == Approx(1.2071).epsilon(1e-4));
  CHECK(to_point(to_planar(p3)).x == Approx(c));
}

TEST_CASE("distance reports name their formula") {
  const auto r = distance_report(MetricKind::Sjoqvist, {0.5, 0}, {0.5, 1});
  CHECK(r.value == Approx(0.5));
  CHECK(r.formula.find("asin") != std::string::npos);
  CHECK(formula_id(MetricKind::Taxicab).find("|dx|") != std::string::npos);
}

TEST_CASE("matrix square root clamps round-off only") {
  Mat2c m;
  m << 1.0, 0.0, 0.0, -1e-13;
  CHECK_NOTHROW(sqrtm_psd(m));
  m << 1.0, 0.0, 0.0, -1e-6;
  CHECK_THROWS_AS(sqrtm_psd(m), DomainError);
}
