#ifndef FACTORLAB_NUMTHEORY_HPP
#define FACTORLAB_NUMTHEORY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace factorlab {

/// Arbitrary-precision signed integer. Zero is always non-negative.
using Integer = mpz_class;

/// Thrown when a caller violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Result of inverting x modulo m. The shared-factor cases are ordinary
/// values: the elliptic-curve method succeeds exactly when inversion fails.
struct InverseOutcome {
  enum class Kind { Inverse, DivisorFound, ZeroDivisorTotal };

  Kind kind;
  /// The inverse for Kind::Inverse, the proper divisor gcd(x, m) for
  /// Kind::DivisorFound, m itself for Kind::ZeroDivisorTotal.
  Integer value;

  bool invertible() const { return kind == Kind::Inverse; }
};

struct Congruence {
  Integer residue;
  Integer modulus;
};

/// Raised by crt_reconstruct when two moduli share a factor.
class NonCoprimeModuliError : public PreconditionError {
 public:
  NonCoprimeModuliError(std::size_t first, std::size_t second, Integer common);

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const Integer& common_factor() const { return common_; }

 private:
  std::size_t first_;
  std::size_t second_;
  Integer common_;
};

struct PerfectPower {
  Integer base;
  unsigned long exponent;
};

/// base^exp mod m, result in [0, m-1]. Negative bases are reduced first.
Integer mod_pow(const Integer& base, const Integer& exp, const Integer& m);

/// Greatest common divisor of two non-negative integers, not both zero.
Integer gcd(const Integer& a, const Integer& b);

/// Inverse of x modulo m, or the divisor that prevents it.
InverseOutcome mod_inverse(const Integer& x, const Integer& m);

/// Unique x in [0, prod m_i - 1] satisfying every congruence.
/// Throws NonCoprimeModuliError naming the first offending pair.
Integer crt_reconstruct(std::span<const Congruence> system);

/// Miller-Rabin. Deterministic witnesses {2..37} below 2^64, 40 pseudo-random
/// witnesses above (seeded from n, so the answer is reproducible).
bool is_probable_prime(const Integer& n);

/// Floor of the k-th root of n >= 0, and whether it is exact.
std::pair<Integer, bool> integer_root(const Integer& n, unsigned long k);

/// (b, e) with b^e = n and e maximal, if n >= 2 is a perfect power.
std::optional<PerfectPower> perfect_power(const Integer& n);

/// Uniform integer in [0, bound - 1] drawn from a 64-bit engine by rejection.
Integer random_below(const Integer& bound, std::mt19937_64& rng);

/// Uniform integer in [lo, hi].
Integer random_between(const Integer& lo, const Integer& hi, std::mt19937_64& rng);

/// Parses decimal or 0x-prefixed hexadecimal, with optional leading '-'.
/// Throws std::invalid_argument on malformed text.
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& n);

/// Converts to uint64 when it fits; throws std::out_of_range otherwise.
std::uint64_t to_u64(const Integer& n);
Integer from_u64(std::uint64_t v);

}  // namespace factorlab

#endif  // FACTORLAB_NUMTHEORY_HPP
