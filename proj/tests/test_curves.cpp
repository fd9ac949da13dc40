#include <doctest.h>

#include <cmath>
#include <random>

#include "factorlab/curves.hpp"
#include "oracles.hpp"

using namespace factorlab;

namespace {

CurveWithPoint must_build(long m, long a, long x0, long y0) {
  auto out = curve_from_point(m, a, x0, y0);
  REQUIRE(std::holds_alternative<CurveWithPoint>(out));
  return std::get<CurveWithPoint>(out);
}

CurvePoint to_point(const oracle::Pt& p) {
  return p.inf ? CurvePoint::identity() : CurvePoint::affine(p.x, p.y);
}

}  // namespace

TEST_CASE("curve_from_point examples") {
  auto c5 = must_build(5, 1, 0, 1);
  CHECK(c5.curve.b == 1);
  CHECK(on_curve(c5.curve, c5.point));

  CHECK(std::holds_alternative<SingularCurve>(curve_from_point(7, 0, 0, 0)));

  auto c35 = must_build(35, 1, 2, 3);
  CHECK(c35.curve.b == 34);
  CHECK(on_curve(c35.curve, c35.point));

  CHECK_THROWS_AS(curve_from_point(3, 1, 0, 1), PreconditionError);
  CHECK_THROWS_AS(curve_from_point(10, 1, 0, 1), PreconditionError);
}

TEST_CASE("curve_from_point surfaces a discriminant divisor") {
  // m = 35, a = 0: b = y0^2 - x0^3. Pick b = 5 so disc = 27*25 = 675 = 0 mod 5 only.
  auto out = curve_from_point(35, 0, 0, 0);
  CHECK(std::holds_alternative<SingularCurve>(out));  // b = 0, disc = 0 mod 35
  // x0 = 1, y0 = 1 gives b = 0 as well; x0 = 0, y0 = 10 gives b = 100 mod 35 = 30,
  // disc = 27 * 900 = 24300 = 0 mod 5, 24300 mod 7 = 3.
  auto split = curve_from_point(35, 0, 0, 10);
  REQUIRE(std::holds_alternative<DivisorFound>(split));
  CHECK(std::get<DivisorFound>(split).divisor == 5);
}

TEST_CASE("point_add examples on y^2 = x^3 + x + 1 mod 5") {
  auto [curve, p] = must_build(5, 1, 0, 1);
  CHECK(point_of(point_add(curve, p, CurvePoint::identity())) == p);
  CHECK(point_of(point_add(curve, CurvePoint::identity(), p)) == p);
  CHECK(point_of(point_add(curve, p, negate(curve, p))).is_identity());

  oracle::SmallCurve small{1, 1, 5};
  const auto doubled = small.add({0, 1, false}, {0, 1, false});
  // lambda = 3, x3 = 4, y3 = 3 * (0 - 4) - 1 = 2 (mod 5). (4, 3) is its negative.
  CHECK(doubled == oracle::Pt{4, 2, false});
  CHECK(point_of(point_add(curve, p, p)) == CurvePoint::affine(4, 2));
  CHECK(point_of(point_add(curve, p, p)) != CurvePoint::affine(4, 3));
}

TEST_CASE("scalar_mul examples") {
  auto [curve, p] = must_build(5, 1, 0, 1);
  CHECK(point_of(scalar_mul(curve, 0, p)).is_identity());
  oracle::SmallCurve small{1, 1, 5};
  CHECK(small.points().size() == 9);
  CHECK(point_of(scalar_mul(curve, 9, p)).is_identity());
  CHECK_FALSE(point_of(scalar_mul(curve, 3, p)).is_identity());
  CHECK_THROWS_AS(scalar_mul(curve, -1, p), PreconditionError);
}

TEST_CASE("point arithmetic matches the naive oracle on every pair for small primes") {
  for (long p : {5L, 7L, 11L, 13L}) {
    for (long a = 0; a < p; ++a) {
      for (long b = 0; b < p; ++b) {
        if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
        oracle::SmallCurve small{a, b, p};
        Curve curve{a, b, p};
        const auto pts = small.points();
        for (const auto& P : pts) {
          REQUIRE(on_curve(curve, to_point(P)));
          for (const auto& Q : pts) {
            auto got = point_add(curve, to_point(P), to_point(Q));
            REQUIRE(is_point(got));
            REQUIRE(point_of(got) == to_point(small.add(P, Q)));
          }
          const auto n = small.order_of(P);
          for (oracle::u64 m = 0; m <= n + 2; ++m) {
            oracle::Pt acc;
            for (oracle::u64 i = 0; i < m; ++i) acc = small.add(acc, P);
            REQUIRE(point_of(scalar_mul(curve, from_u64(m), to_point(P))) == to_point(acc));
          }
        }
      }
    }
  }
}

TEST_CASE("count_points_exhaustive examples") {
  auto r = count_points_exhaustive(Curve{1, 1, 5});
  CHECK(r.order == 9);
  CHECK(r.trace == -3);
  auto s = count_points_exhaustive(Curve{0, 1, 5});
  CHECK(s.order == 6);
  CHECK(s.trace == 0);
  CHECK(oracle::SmallCurve{0, 1, 5}.points().size() == 6);
  CHECK_THROWS_AS(count_points_exhaustive(Curve{1, 1, 15}), PreconditionError);
  CHECK_THROWS_AS(count_points_exhaustive(Curve{1, 1, 100003}), PreconditionError);
}

TEST_CASE("count_points_exhaustive agrees with brute-force enumeration") {
  for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
    PointCounter counter(static_cast<std::uint64_t>(p));
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b) {
        if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
        const auto n = oracle::SmallCurve{a, b, p}.points().size();
        REQUIRE(counter.count(a, b).order == n);
      }
  }
}

TEST_CASE("Hasse interval bounds are exact") {
  // p = 10007: 2 sqrt(p) = 200.07, so orders lie in [9808, 10208].
  CHECK(hasse_interval(10007) == std::pair<std::uint64_t, std::uint64_t>{9808, 10208});
  for (std::uint64_t p : {5ull, 7ull, 101ull, 10007ull, 99991ull}) {
    auto [lo, hi] = hasse_interval(p);
    const double s = std::sqrt(static_cast<double>(p));
    CHECK(static_cast<double>(lo) >= (s - 1) * (s - 1));
    CHECK(static_cast<double>(lo - 1) < (s - 1) * (s - 1));
    CHECK(static_cast<double>(hi) <= (s + 1) * (s + 1));
    CHECK(static_cast<double>(hi + 1) > (s + 1) * (s + 1));
  }
}

TEST_CASE("associativity on random triples over small prime fields") {
  std::mt19937_64 rng(2024);
  const std::vector<long> primes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  int checked = 0;
  while (checked < 2000) {
    const long p = primes[rng() % primes.size()];
    const long a = static_cast<long>(rng() % p), b = static_cast<long>(rng() % p);
    if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
    const auto pts = oracle::SmallCurve{a, b, p}.points();
    Curve c{a, b, p};
    auto pick = [&] { return to_point(pts[rng() % pts.size()]); };
    const auto P = pick(), Q = pick(), R = pick();
    auto left = point_add(c, point_of(point_add(c, P, Q)), R);
    auto right = point_add(c, P, point_of(point_add(c, Q, R)));
    REQUIRE(point_of(left) == point_of(right));
    ++checked;
  }
}

TEST_CASE("composite modulus failures return proper divisors") {
  std::mt19937_64 rng(99);
  const std::vector<long> moduli{35, 77, 91, 143, 221, 1961, 3 * 5 * 7 * 11};
  for (int trial = 0; trial < 2000; ++trial) {
    const Integer m = moduli[rng() % moduli.size()];
    auto gen = random_curve(m, rng);
    if (auto* d = std::get_if<DivisorFound>(&gen)) {
      REQUIRE(d->divisor > 1);
      REQUIRE(d->divisor < m);
      REQUIRE(m % d->divisor == 0);
      continue;
    }
    REQUIRE(std::holds_alternative<CurveWithPoint>(gen));
    const auto& cw = std::get<CurveWithPoint>(gen);
    auto res = scalar_mul(cw.curve, from_u64(1 + rng() % 5000), cw.point);
    if (auto* d = std::get_if<DivisorFound>(&res)) {
      REQUIRE(d->divisor > 1);
      REQUIRE(d->divisor < m);
      REQUIRE(m % d->divisor == 0);
    } else {
      REQUIRE(on_curve(cw.curve, point_of(res)));
    }
  }
}
