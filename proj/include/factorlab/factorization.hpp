#ifndef FACTORLAB_FACTORIZATION_HPP
#define FACTORLAB_FACTORIZATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "factorlab/numtheory.hpp"

namespace factorlab {

struct Factorization {
  Integer n;
  std::vector<std::pair<Integer, unsigned>> primes;      // ascending
  std::vector<std::pair<Integer, unsigned>> unfactored;  // composites no split was found for

  bool complete() const { return unfactored.empty(); }
  /// Product of every prime and unfactored cofactor with multiplicity.
  Integer recompose() const;
};

/// Finds a proper divisor of an odd composite that is not a perfect power,
/// or nothing. The second argument numbers the split attempts 0, 1, 2, ...
using Splitter = std::function<std::optional<Integer>(const Integer&, std::uint64_t)>;

/// Trial division by the first k primes, then repeated splitting with
/// probable-prime and perfect-power screening of every cofactor.
Factorization factor_completely(const Integer& n, std::size_t k, const Splitter& split);

}  // namespace factorlab

#endif  // FACTORLAB_FACTORIZATION_HPP
