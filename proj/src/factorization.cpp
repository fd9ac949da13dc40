#include "factorlab/factorization.hpp"

#include <algorithm>
#include <map>

#include "factorlab/primes.hpp"

namespace factorlab {

Integer Factorization::recompose() const {
  Integer acc = 1;
  for (const auto* list : {&primes, &unfactored}) {
    for (const auto& [base, e] : *list) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), base.get_mpz_t(), e);
      acc *= pe;
    }
  }
  return acc;
}

Factorization factor_completely(const Integer& n, std::size_t k, const Splitter& split) {
  if (n < 2) throw PreconditionError("factorization: N must be >= 2");
  const FactorBase fb = build_factor_base(std::max<std::size_t>(k, 1));

  std::map<Integer, unsigned> primes;
  std::map<Integer, unsigned> unfactored;

  Integer rest = n;
  for (std::uint64_t p : fb.primes()) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) primes[from_u64(p)] += e;
  }

  std::vector<std::pair<Integer, unsigned>> pending;
  if (rest > 1) pending.emplace_back(rest, 1);
  std::uint64_t attempt = 0;

  while (!pending.empty()) {
    auto [value, mult] = pending.back();
    pending.pop_back();
    if (value == 1) continue;
    if (is_probable_prime(value)) {
      primes[value] += mult;
      continue;
    }
    if (auto pp = perfect_power(value)) {
      pending.emplace_back(pp->base, mult * static_cast<unsigned>(pp->exponent));
      continue;
    }
    auto d = split(value, attempt++);
    if (!d) {
      unfactored[value] += mult;
      continue;
    }
    if (*d <= 1 || *d >= value || value % *d != 0)
      throw std::logic_error("factorization: splitter returned a non-divisor");
    pending.emplace_back(*d, mult);
    pending.emplace_back(Integer(value / *d), mult);
  }

  return Factorization{n, {primes.begin(), primes.end()}, {unfactored.begin(), unfactored.end()}};
}

}  // namespace factorlab
