#include <doctest.h>

#include <cmath>

#include "factorlab/primes.hpp"
#include "oracles.hpp"

using namespace factorlab;

TEST_CASE("build_factor_base examples") {
  auto fb5 = build_factor_base(5);
  CHECK(std::vector<std::uint64_t>(fb5.primes().begin(), fb5.primes().end()) ==
        std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  CHECK(build_factor_base(1).largest() == 2);
  CHECK(oracle::first_primes(25).back() == 97);
  CHECK(build_factor_base(25).largest() == 97);
  CHECK(build_factor_base(25).prime(25) == 97);
  CHECK_THROWS_AS(build_factor_base(0), PreconditionError);
  CHECK_THROWS_AS(build_factor_base(100'000'001), std::length_error);
}

TEST_CASE("factor bases match trial division and are prefixes of each other") {
  const auto expected = oracle::first_primes(2000);
  const auto big = build_factor_base(2000);
  for (std::size_t i = 0; i < expected.size(); ++i) REQUIRE(big.primes()[i] == expected[i]);
  for (std::size_t k : {1u, 2u, 7u, 64u, 500u, 1999u}) {
    const auto small = build_factor_base(k);
    REQUIRE(small.k() == k);
    for (std::size_t i = 0; i < k; ++i) REQUIRE(small.primes()[i] == big.primes()[i]);
  }
}

TEST_CASE("smooth_decompose examples") {
  const auto fb = build_factor_base(5);
  auto d = smooth_decompose(720, fb);
  CHECK(d.exponents == std::vector<std::uint32_t>{4, 2, 1, 0, 0});
  CHECK(d.cofactor == 1);
  CHECK(d.smooth());

  auto one = smooth_decompose(1, fb);
  CHECK(one.exponents == std::vector<std::uint32_t>(5, 0));
  CHECK(one.cofactor == 1);

  auto rough = smooth_decompose(97 * 8, fb);
  CHECK(rough.exponents == std::vector<std::uint32_t>{3, 0, 0, 0, 0});
  CHECK(rough.cofactor == 97);
  CHECK_FALSE(rough.smooth());
  CHECK_THROWS_AS(smooth_decompose(0, fb), PreconditionError);
}

TEST_CASE("smooth_decompose reconstructs every n up to 10^6") {
  const auto fb = build_factor_base(10);
  Integer base_product = 1;
  for (auto p : fb.primes()) base_product *= from_u64(p);
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    auto d = smooth_decompose(from_u64(n), fb);
    Integer acc = d.cofactor;
    for (std::size_t j = 0; j < fb.k(); ++j)
      for (std::uint32_t e = 0; e < d.exponents[j]; ++e) acc *= from_u64(fb.primes()[j]);
    REQUIRE(acc == from_u64(n));
    Integer g;
    mpz_gcd(g.get_mpz_t(), d.cofactor.get_mpz_t(), base_product.get_mpz_t());
    REQUIRE(g == 1);
  }
}

TEST_CASE("prime_index_approx values") {
  CHECK(prime_index_approx(2) == doctest::Approx(2 * std::log(2.0)));
  CHECK(prime_index_approx(2) == doctest::Approx(1.386).epsilon(1e-3));
  CHECK(prime_index_approx(10) == doctest::Approx(23.03).epsilon(1e-3));
  CHECK(prime_index_approx(100) == doctest::Approx(460.5).epsilon(1e-3));
  CHECK_THROWS_AS(prime_index_approx(1), PreconditionError);
}

TEST_CASE("i ln i underestimates p_i and stays within the empirical envelope") {
  const auto fb = build_factor_base(10'000);
  for (std::size_t i = 2; i <= 10'000; ++i) {
    const double approx = prime_index_approx(i);
    const double p = static_cast<double>(fb.prime(i));
    REQUIRE(p > approx);
    if (i >= 10) {
      REQUIRE(p >= 0.5 * approx);
      REQUIRE(p <= 1.3 * approx);
    }
  }
}

TEST_CASE("nth_prime_max_below examples") {
  CHECK(nth_prime_max_below(10) == std::pair<std::size_t, std::uint64_t>{4, 7});
  CHECK(nth_prime_max_below(3) == std::pair<std::size_t, std::uint64_t>{1, 2});
  CHECK(nth_prime_max_below(100) == std::pair<std::size_t, std::uint64_t>{25, 97});
  CHECK(nth_prime_max_below(98) == std::pair<std::size_t, std::uint64_t>{25, 97});
  CHECK(nth_prime_max_below(97) == std::pair<std::size_t, std::uint64_t>{24, 89});
  CHECK_THROWS_AS(nth_prime_max_below(2), PreconditionError);
}
