#include "factorlab/numtheory.hpp"

#include <array>
#include <cctype>

namespace factorlab {

NonCoprimeModuliError::NonCoprimeModuliError(std::size_t first, std::size_t second,
                                             Integer common)
    : PreconditionError("crt: moduli " + std::to_string(first) + " and " +
                        std::to_string(second) + " share factor " + common.get_str()),
      first_(first),
      second_(second),
      common_(std::move(common)) {}

Integer mod_pow(const Integer& base, const Integer& exp, const Integer& m) {
  if (m < 2) throw PreconditionError("mod_pow: modulus must be >= 2");
  if (exp < 0) throw PreconditionError("mod_pow: exponent must be >= 0");
  Integer result;
  mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return result;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a < 0 || b < 0) throw PreconditionError("gcd: operands must be non-negative");
  if (a == 0 && b == 0) throw PreconditionError("gcd: both operands are zero");
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

InverseOutcome mod_inverse(const Integer& x, const Integer& m) {
  if (m < 2) throw PreconditionError("mod_inverse: modulus must be >= 2");
  Integer reduced = x % m;
  if (reduced < 0) reduced += m;

  Integer g, s;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), nullptr, reduced.get_mpz_t(), m.get_mpz_t());
  if (g == 1) {
    if (s < 0) s += m;
    return {InverseOutcome::Kind::Inverse, s};
  }
  if (g == m) return {InverseOutcome::Kind::ZeroDivisorTotal, m};
  return {InverseOutcome::Kind::DivisorFound, g};
}

Integer crt_reconstruct(std::span<const Congruence> system) {
  if (system.empty()) throw PreconditionError("crt: empty system");
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto& c = system[i];
    if (c.modulus < 1) throw PreconditionError("crt: moduli must be positive");
    if (c.residue < 0 || c.residue >= c.modulus)
      throw PreconditionError("crt: residue " + std::to_string(i) + " out of range");
    for (std::size_t j = 0; j < i; ++j) {
      Integer g = gcd(system[j].modulus, c.modulus);
      if (g != 1) throw NonCoprimeModuliError(j, i, g);
    }
  }

  // Garner-style incremental merge: x stays the solution modulo `acc`.
  Integer x = system[0].residue;
  Integer acc = system[0].modulus;
  for (std::size_t i = 1; i < system.size(); ++i) {
    const auto& c = system[i];
    Integer diff = (c.residue - x) % c.modulus;
    if (diff < 0) diff += c.modulus;
    Integer inv = 0;
    if (c.modulus > 1) inv = mod_inverse(acc % c.modulus, c.modulus).value;
    Integer t = (diff * inv) % c.modulus;
    x += acc * t;
    acc *= c.modulus;
  }
  return x;
}

namespace {

bool miller_rabin_round(const Integer& n, const Integer& n_minus_1, const Integer& d,
                        unsigned long s, const Integer& witness) {
  Integer x = mod_pow(witness, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

constexpr std::array<unsigned, 12> kSmallWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr int kRandomWitnesses = 40;

}  // namespace

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }

  Integer n_minus_1 = n - 1;
  Integer d = n_minus_1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    for (unsigned a : kSmallWitnesses)
      if (!miller_rabin_round(n, n_minus_1, d, s, Integer(a))) return false;
    return true;
  }

  std::mt19937_64 rng(static_cast<std::uint64_t>(mpz_getlimbn(n.get_mpz_t(), 0)));
  Integer span = n - 3;
  for (int i = 0; i < kRandomWitnesses; ++i) {
    Integer a = random_below(span, rng) + 2;
    if (!miller_rabin_round(n, n_minus_1, d, s, a)) return false;
  }
  return true;
}

std::pair<Integer, bool> integer_root(const Integer& n, unsigned long k) {
  if (n < 0) throw PreconditionError("integer_root: negative operand");
  if (k == 0) throw PreconditionError("integer_root: zeroth root");
  Integer root;
  int exact = mpz_root(root.get_mpz_t(), n.get_mpz_t(), k);
  return {root, exact != 0};
}

std::optional<PerfectPower> perfect_power(const Integer& n) {
  if (n < 2) throw PreconditionError("perfect_power: operand must be >= 2");
  const unsigned long max_exp = mpz_sizeinbase(n.get_mpz_t(), 2);
  // Scanning from the largest exponent down gives the maximal one first.
  for (unsigned long e = max_exp; e >= 2; --e) {
    auto [root, exact] = integer_root(n, e);
    if (exact && root >= 2) return PerfectPower{root, e};
  }
  return std::nullopt;
}

Integer random_below(const Integer& bound, std::mt19937_64& rng) {
  if (bound < 1) throw PreconditionError("random_below: bound must be positive");
  if (bound == 1) return 0;
  const std::size_t bits = mpz_sizeinbase(Integer(bound - 1).get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  Integer candidate;
  for (;;) {
    candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      if (w == 0) word &= top_mask;
      candidate <<= 64;
      candidate += from_u64(word);
    }
    if (candidate < bound) return candidate;
  }
}

Integer random_between(const Integer& lo, const Integer& hi, std::mt19937_64& rng) {
  if (hi < lo) throw PreconditionError("random_between: empty range");
  return lo + random_below(hi - lo + 1, rng);
}

Integer parse_integer(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  int base = 10;
  if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    base = 16;
    body.remove_prefix(2);
  }
  if (body.empty()) throw std::invalid_argument("empty integer literal '" + std::string(text) + "'");
  for (char c : body) {
    bool ok = base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                         : std::isdigit(static_cast<unsigned char>(c)) != 0;
    if (!ok) throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  }
  Integer value(std::string(body), base);
  return negative ? Integer(-value) : value;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::uint64_t to_u64(const Integer& n) {
  if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
    throw std::out_of_range("integer does not fit in 64 bits: " + n.get_str());
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
  return v;
}

Integer from_u64(std::uint64_t v) {
  Integer n;
  mpz_import(n.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return n;
}

}  // namespace factorlab
