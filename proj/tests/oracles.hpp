// Brute-force reference implementations used only by the tests. None of
// these call into the library; they are deliberately naive.
#ifndef FACTORLAB_TESTS_ORACLES_HPP
#define FACTORLAB_TESTS_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  for (u64 i = 0; i < exp; ++i) r = static_cast<u64>((static_cast<unsigned __int128>(r) * base) % m);
  return r;
}

inline u64 gcd(u64 a, u64 b) {
  // Largest common divisor by exhaustive search.
  if (a == 0) return b;
  if (b == 0) return a;
  u64 best = 1;
  for (u64 d = 1; d <= a && d <= b; ++d)
    if (a % d == 0 && b % d == 0) best = d;
  return best;
}

inline std::optional<u64> inverse(u64 x, u64 m) {
  for (u64 v = 1; v < m; ++v)
    if ((x * v) % m == 1) return v;
  return std::nullopt;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> first_primes(std::size_t k) {
  std::vector<u64> out;
  for (u64 n = 2; out.size() < k; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::optional<u64> crt_search(const std::vector<std::pair<u64, u64>>& system) {
  u64 product = 1;
  for (auto [r, m] : system) product *= m;
  for (u64 x = 0; x < product; ++x) {
    bool ok = true;
    for (auto [r, m] : system) ok = ok && (x % m == r);
    if (ok) return x;
  }
  return std::nullopt;
}

/// Largest e with b^e == n, searching every base up to n.
inline std::optional<std::pair<u64, unsigned>> perfect_power(u64 n) {
  std::optional<std::pair<u64, unsigned>> best;
  for (u64 b = 2; b * b <= n; ++b) {
    u64 v = b;
    unsigned e = 1;
    while (v < n) {
      v *= b;
      ++e;
    }
    if (v == n && (!best || e > best->second)) best = {b, e};
  }
  return best;
}

/// Affine point on a small curve; `inf` marks the identity.
struct Pt {
  i64 x = 0, y = 0;
  bool inf = true;
  friend bool operator==(const Pt&, const Pt&) = default;
};

/// Curve over F_p with p small enough for i64 products.
struct SmallCurve {
  i64 a, b, p;

  i64 mod(i64 v) const { return ((v % p) + p) % p; }
  i64 inv(i64 v) const {
    // extended Euclid on (v, p)
    i64 r0 = p, r1 = mod(v), s0 = 0, s1 = 1;
    while (r1 != 0) {
      const i64 q = r0 / r1;
      i64 t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    return r0 == 1 ? mod(s0) : 0;
  }

  /// #E(F_p) from a table of squares: 1 + sum over x of #{y : y^2 = f(x)}.
  u64 order() const {
    std::vector<u64> roots(static_cast<std::size_t>(p), 0);
    for (i64 y = 0; y < p; ++y) ++roots[static_cast<std::size_t>(y * y % p)];
    u64 n = 1;
    for (i64 x = 0; x < p; ++x) n += roots[static_cast<std::size_t>(mod(x * x % p * x + a * x + b))];
    return n;
  }

  std::vector<Pt> points() const {
    std::vector<Pt> out{Pt{}};
    for (i64 x = 0; x < p; ++x)
      for (i64 y = 0; y < p; ++y)
        if (mod(y * y) == mod(x * x * x + a * x + b)) out.push_back({x, y, false});
    return out;
  }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x && mod(P.y + Q.y) == 0) return Pt{};
    i64 lambda;
    if (P.x == Q.x)
      lambda = mod((3 * P.x * P.x + a) % p * inv(2 * P.y));
    else
      lambda = mod(mod(Q.y - P.y) * inv(Q.x - P.x));
    i64 x3 = mod(lambda * lambda - P.x - Q.x);
    i64 y3 = mod(lambda * (P.x - x3) - P.y);
    return {x3, y3, false};
  }

  /// Smallest n >= 1 with nP = O, by repeated addition.
  u64 order_of(const Pt& P) const {
    Pt acc = P;
    u64 n = 1;
    while (!acc.inf) {
      acc = add(acc, P);
      ++n;
    }
    return n;
  }
};

}  // namespace oracle

#endif  // FACTORLAB_TESTS_ORACLES_HPP
