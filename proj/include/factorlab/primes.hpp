#ifndef FACTORLAB_PRIMES_HPP
#define FACTORLAB_PRIMES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "factorlab/numtheory.hpp"

namespace factorlab {

/// The first k primes p_1 = 2 < p_2 < ... < p_k. Immutable once built.
class FactorBase {
 public:
  explicit FactorBase(std::vector<std::uint64_t> primes);

  std::size_t k() const { return primes_.size(); }
  /// 1-based access: prime(1) == 2.
  std::uint64_t prime(std::size_t i) const { return primes_.at(i - 1); }
  std::uint64_t largest() const { return primes_.back(); }
  std::span<const std::uint64_t> primes() const { return primes_; }

 private:
  std::vector<std::uint64_t> primes_;
};

/// n = cofactor * prod p_j^exponents[j]; cofactor has no prime factor <= p_k.
struct SmoothDecomposition {
  std::vector<std::uint32_t> exponents;
  Integer cofactor = 1;

  bool smooth() const { return cofactor == 1; }
};

/// All primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// First k primes via a sieve whose bound doubles until enough are found.
/// Throws std::length_error for k > 10^8.
FactorBase build_factor_base(std::size_t k);

SmoothDecomposition smooth_decompose(const Integer& n, const FactorBase& fb);

/// i * ln(i), the usual estimate for the i-th prime.
double prime_index_approx(std::size_t i);

/// Largest n with p_n < bound, together with p_n. Requires bound >= 3.
std::pair<std::size_t, std::uint64_t> nth_prime_max_below(std::uint64_t bound);

}  // namespace factorlab

#endif  // FACTORLAB_PRIMES_HPP
