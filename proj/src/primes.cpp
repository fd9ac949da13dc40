#include "factorlab/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace factorlab {

namespace {
constexpr std::size_t kMaxFactorBase = 100'000'000;
}

FactorBase::FactorBase(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw PreconditionError("factor base must hold at least one prime");
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  // Odd-only sieve: index i stands for 2i+1.
  const std::uint64_t half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  out.push_back(2);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return out;
}

FactorBase build_factor_base(std::size_t k) {
  if (k == 0) throw PreconditionError("build_factor_base: k must be >= 1");
  if (k > kMaxFactorBase)
    throw std::length_error("build_factor_base: k = " + std::to_string(k) +
                            " exceeds the supported maximum of 10^8");
  std::uint64_t limit = 64;
  for (;;) {
    auto primes = primes_up_to(limit);
    if (primes.size() >= k) {
      primes.resize(k);
      return FactorBase(std::move(primes));
    }
    limit *= 2;
  }
}

SmoothDecomposition smooth_decompose(const Integer& n, const FactorBase& fb) {
  if (n < 1) throw PreconditionError("smooth_decompose: n must be >= 1");
  SmoothDecomposition out;
  out.exponents.assign(fb.k(), 0);
  out.cofactor = n;
  mpz_ptr c = out.cofactor.get_mpz_t();
  const auto primes = fb.primes();
  for (std::size_t j = 0; j < primes.size() && out.cofactor > 1; ++j) {
    const unsigned long p = static_cast<unsigned long>(primes[j]);
    while (mpz_divisible_ui_p(c, p)) {
      mpz_divexact_ui(c, c, p);
      ++out.exponents[j];
    }
  }
  return out;
}

double prime_index_approx(std::size_t i) {
  if (i < 2) throw PreconditionError("prime_index_approx: i must be >= 2");
  const double x = static_cast<double>(i);
  return x * std::log(x);
}

std::pair<std::size_t, std::uint64_t> nth_prime_max_below(std::uint64_t bound) {
  if (bound < 3) throw PreconditionError("nth_prime_max_below: bound must be >= 3");
  const auto primes = primes_up_to(bound - 1);
  return {primes.size(), primes.back()};
}

}  // namespace factorlab
