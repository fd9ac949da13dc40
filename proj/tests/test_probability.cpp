#include <doctest.h>

#include <cmath>
#include <random>

#include "factorlab/probability.hpp"
#include "oracles.hpp"

using namespace factorlab;

namespace {

oracle::u64 brute_count(long lo, long hi, long z) {
  oracle::u64 c = 0;
  for (long x = lo; x <= hi; ++x)
    if (((x % z) + z) % z == 0) ++c;
  return c;
}

bool rough_oracle(oracle::u64 n, oracle::u64 pk) {
  for (auto [q, e] : oracle::factorize(n))
    if (q > pk) return true;
  return false;
}

}  // namespace

TEST_CASE("divisibility_count examples") {
  auto a = divisibility_count({1, 100}, 7);
  CHECK(a.count == 14);
  CHECK(a.frequency == Rational(14) / 100);
  auto b = divisibility_count({0, 9}, 2);
  CHECK(b.count == 5);
  CHECK(b.frequency == Rational(1, 2));
  for (long z = 2; z < 12; ++z) CHECK(divisibility_count({5, 5}, z).count == (5 % z == 0 ? 1 : 0));
}

TEST_CASE("divisibility_count matches a brute-force loop") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const long lo = static_cast<long>(rng() % 2000) - 1000;
    const long hi = lo + 1 + static_cast<long>(rng() % 500);
    const long z = 2 + static_cast<long>(rng() % 60);
    REQUIRE(divisibility_count({lo, hi}, z).count == static_cast<unsigned long>(brute_count(lo, hi, z)));
  }
}

TEST_CASE("check_prop1 examples") {
  auto c = check_prop1({1, 100}, 7);
  CHECK(c.holds);
  CHECK(c.tolerance == Rational(1) / 99);
  CHECK(c.deviation == Rational(1, 7) - Rational(14) / 100);
  CHECK(c.deviation <= c.tolerance);

  for (long z : {2L, 3L, 7L, 97L}) {
    auto t = check_prop1({0, z * 13 - 1}, z);
    CHECK(t.frequency == Rational(1) / z);
    CHECK(t.deviation == 0);
  }
}

TEST_CASE("check_prop1 sweep over many widths and offsets") {
  for (long z = 2; z <= 101; ++z)
    for (const Integer width : {Integer(1000), Integer(10000), Integer(1000000)})
      for (const Integer offset : {Integer(0), Integer(1), Integer(123456789)}) {
        auto c = check_prop1({offset, offset + width}, z);
        REQUIRE(c.holds);
        REQUIRE(c.slack >= 0);
        REQUIRE(c.tolerance == Rational(1) / Rational(width));
      }
}

TEST_CASE("prop2_bound values") {
  auto b = prop2_bound(25, 3, 10007, false);
  CHECK(b.next_prime == 101);
  CHECK(b.bound == doctest::Approx(0.035).epsilon(1e-12));
  CHECK(b.correction == doctest::Approx(2.5 * std::log(std::log(10007.0)) / std::sqrt(10007.0)));
  CHECK(b.correction == doctest::Approx(0.0555).epsilon(2e-3));
  CHECK_FALSE(b.vacuous);

  auto r0 = prop2_bound(25, 0, 10007, false);
  CHECK(r0.bound == doctest::Approx(10.0 / (8.0 * 100.0)));

  auto approx = prop2_bound(25, 3, 10007, true);
  CHECK(approx.bound == doctest::Approx(28.0 / (8.0 * 25.0 * std::pow(std::log(26.0), 2))));

  // p_3 = 5: bound = ((r+2)(r+1)+8)/32
  CHECK(prop2_bound(2, 4, 101, false).vacuous);
  CHECK_FALSE(prop2_bound(2, 3, 101, false).vacuous);
  CHECK_THROWS_AS(prop2_bound(1, 3, 10007, false), PreconditionError);
  CHECK_THROWS_AS(prop2_bound(25, 3, 10000, false), PreconditionError);
  CHECK_THROWS_AS(prop2_bound(25, 3, 97, false), PreconditionError);
}

TEST_CASE("prop2_bound decreases in k and increases in r") {
  double prev = 2.0;
  for (std::size_t k = 2; k < 200; ++k) {
    const double b = prop2_bound(k, 3, 1'000'003, false).bound;
    REQUIRE(b < prev);
    prev = b;
  }
  for (unsigned r = 0; r < 10; ++r)
    REQUIRE(prop2_bound(25, r, 10007, false).bound < prop2_bound(25, r + 1, 10007, false).bound);
}

TEST_CASE("uniform sampler stays in the Hasse interval") {
  OrderSampler s(OrderModel::UniformOrder, 10007);
  std::mt19937_64 rng(4);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto v = s.draw(rng);
    REQUIRE(v >= 9808);
    REQUIRE(v <= 10208);
    sum += static_cast<double>(v);
  }
  CHECK(sum / n == doctest::Approx(10008.0).epsilon(1e-3));
}

TEST_CASE("true-curve sampler draws real group orders") {
  OrderSampler s(OrderModel::TrueCurveOrder, 101);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const auto v = s.draw(rng);
    REQUIRE(v >= 82);
    REQUIRE(v <= 122);
  }
  CHECK_THROWS_AS(OrderSampler(OrderModel::TrueCurveOrder, 1'000'003), PreconditionError);
}

TEST_CASE("sampled frequency matches exact enumeration for a small case") {
  // p = 101, k = 2, r = 1: an order is rough when it has a prime factor > 3.
  const auto fb = build_factor_base(2);
  std::size_t rough = 0, total = 0;
  for (oracle::u64 v = 82; v <= 122; ++v, ++total) rough += rough_oracle(v, 3);
  const double q = static_cast<double>(rough) / static_cast<double>(total);
  const double exact = std::pow(q, 3);

  Prop2Params params;
  params.k = 2;
  params.r = 1;
  params.p = 101;
  params.trials = 200'000;
  params.seed = 3;
  auto rep = sample_event_Ek1(params, fb);
  CHECK(std::abs(rep.empirical_frequency - exact) <= 4 * rep.standard_error);
  CHECK(rep.next_prime == 5);
}

TEST_CASE("is_smooth against factorization") {
  const auto fb = build_factor_base(6);
  for (oracle::u64 n = 1; n < 5000; ++n) REQUIRE(is_smooth(n, fb) == !rough_oracle(n, 13));
}

TEST_CASE("report is reproducible and worker-independent") {
  Prop2Params params;
  params.trials = 20000;
  params.seed = 99;
  const auto fb = build_factor_base(params.k);
  auto a = sample_event_Ek1(params, fb, 1);
  auto b = sample_event_Ek1(params, fb, 1);
  auto c = sample_event_Ek1(params, fb, 4);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.threshold == doctest::Approx(a.analytic_bound + a.correction + 3 * a.standard_error));
}

TEST_CASE("smoothness profile rows") {
  const auto fb = build_factor_base(35);  // primes up to 149
  auto prof = smoothness_profile(101, fb, 40000, 5, OrderModel::UniformOrder);
  REQUIRE(prof.rows.size() == 35);
  CHECK(prof.rows[0].prime == 2);
  CHECK(prof.rows[0].frequency == doctest::Approx(0.5).epsilon(0.05));
  for (const auto& row : prof.rows) {
    if (row.prime > 122) CHECK(row.frequency == 0.0);
  }
  auto again = smoothness_profile(101, fb, 40000, 5, OrderModel::UniformOrder, 3);
  for (std::size_t i = 0; i < prof.rows.size(); ++i) CHECK(prof.rows[i].hits == again.rows[i].hits);

  auto curves = smoothness_profile(101, fb, 20000, 5, OrderModel::TrueCurveOrder);
  CHECK(curves.smooth_fraction == doctest::Approx(1.0));  // every order <= 122 is 149-smooth
}

TEST_CASE("model and verdict names round trip") {
  for (auto m : {OrderModel::UniformOrder, OrderModel::TrueCurveOrder}) CHECK(parse_order_model(to_string(m)) == m);
  for (auto v : {Verdict::WithinBound, Verdict::Exceeds, Verdict::BoundVacuous}) CHECK(parse_verdict(to_string(v)) == v);
  CHECK_THROWS(parse_order_model("gaussian"));
}
