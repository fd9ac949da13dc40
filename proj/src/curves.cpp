#include "factorlab/curves.hpp"

namespace factorlab {

namespace {

Integer reduce(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

void require_valid_modulus(const Integer& m) {
  if (m < 5) throw PreconditionError("curve modulus must be >= 5");
  if (mpz_even_p(m.get_mpz_t())) throw PreconditionError("curve modulus must be odd");
}

/// Inverts `denominator` or reports the factor it shares with m.
/// ZeroDivisorTotal cannot occur for callers that rule out den = 0 mod m.
std::variant<Integer, DivisorFound> invert(const Integer& denominator, const Integer& m) {
  auto inv = mod_inverse(denominator, m);
  if (inv.invertible()) return inv.value;
  if (inv.kind == InverseOutcome::Kind::DivisorFound) return DivisorFound{inv.value};
  throw std::logic_error("curve arithmetic: zero denominator reached inversion");
}

CurvePoint finish(const Curve& c, const Integer& slope, const CurvePoint& p, const Integer& xq) {
  const Integer& m = c.modulus;
  Integer x3 = reduce(slope * slope - p.x() - xq, m);
  Integer y3 = reduce(slope * (p.x() - x3) - p.y(), m);
  return CurvePoint::affine(std::move(x3), std::move(y3));
}

}  // namespace

CurveFromPointOutcome curve_from_point(const Integer& m, const Integer& a, const Integer& x0,
                                       const Integer& y0) {
  require_valid_modulus(m);
  Integer ar = reduce(a, m), xr = reduce(x0, m), yr = reduce(y0, m);
  Integer b = reduce(yr * yr - xr * xr * xr - ar * xr, m);
  Integer disc = reduce(4 * ar * ar * ar + 27 * b * b, m);
  if (disc == 0) return SingularCurve{};
  Integer g = gcd(disc, m);
  if (g != 1) return DivisorFound{g};
  return CurveWithPoint{Curve{ar, b, m}, CurvePoint::affine(xr, yr)};
}

CurveFromPointOutcome random_curve(const Integer& m, std::mt19937_64& rng, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Integer a = random_below(m, rng);
    Integer x0 = random_below(m, rng);
    Integer y0 = random_below(m, rng);
    auto outcome = curve_from_point(m, a, x0, y0);
    if (!std::holds_alternative<SingularCurve>(outcome)) return outcome;
  }
  return SingularCurve{};
}

bool on_curve(const Curve& c, const CurvePoint& p) {
  if (p.is_identity()) return true;
  const Integer& m = c.modulus;
  Integer lhs = reduce(p.y() * p.y(), m);
  Integer rhs = reduce(p.x() * p.x() * p.x() + c.a * p.x() + c.b, m);
  return lhs == rhs;
}

CurvePoint negate(const Curve& c, const CurvePoint& p) {
  if (p.is_identity()) return p;
  return CurvePoint::affine(p.x(), reduce(-p.y(), c.modulus));
}

GroupOpOutcome point_double(const Curve& c, const CurvePoint& p) {
  if (p.is_identity()) return p;
  const Integer& m = c.modulus;
  if (p.y() == 0) return CurvePoint::identity();
  auto inv = invert(reduce(2 * p.y(), m), m);
  if (auto* d = std::get_if<DivisorFound>(&inv)) return *d;
  Integer slope = reduce((3 * p.x() * p.x() + c.a) * std::get<Integer>(inv), m);
  return finish(c, slope, p, p.x());
}

GroupOpOutcome point_add(const Curve& c, const CurvePoint& p, const CurvePoint& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  const Integer& m = c.modulus;

  if (p.x() == q.x()) {
    if (p.y() == q.y()) return point_double(c, p);
    Integer sum = reduce(p.y() + q.y(), m);
    if (sum == 0) return CurvePoint::identity();
    // Same x, y neither equal nor opposite: only possible for composite m,
    // and then (y_p - y_q)(y_p + y_q) = 0 exposes a factor.
    return DivisorFound{gcd(reduce(p.y() - q.y(), m), m)};
  }

  auto inv = invert(reduce(q.x() - p.x(), m), m);
  if (auto* d = std::get_if<DivisorFound>(&inv)) return *d;
  Integer slope = reduce((q.y() - p.y()) * std::get<Integer>(inv), m);
  return finish(c, slope, p, q.x());
}

GroupOpOutcome scalar_mul(const Curve& c, const Integer& n, const CurvePoint& p) {
  if (n < 0) throw PreconditionError("scalar_mul: negative multiplier");
  CurvePoint acc = CurvePoint::identity();
  if (n == 0 || p.is_identity()) return acc;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    auto doubled = point_double(c, acc);
    if (!is_point(doubled)) return doubled;
    acc = point_of(doubled);
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      auto added = point_add(c, acc, p);
      if (!is_point(added)) return added;
      acc = point_of(added);
    }
  }
  return acc;
}

PointCounter::PointCounter(std::uint64_t p) : p_(p) {
  if (p < 3 || p > kMaxPrime) throw PreconditionError("point counting needs a prime in [3, 10^5]");
  if (!is_probable_prime(from_u64(p))) throw PreconditionError("point counting needs a prime modulus");
  roots_.assign(p, 0);
  for (std::uint64_t y = 0; y < p; ++y) ++roots_[(y * y) % p];
}

TraceRecord PointCounter::count(std::uint64_t a, std::uint64_t b) const {
  a %= p_;
  b %= p_;
  std::uint64_t order = 1;  // point at infinity
  for (std::uint64_t x = 0; x < p_; ++x) {
    const std::uint64_t rhs = ((x * x % p_ + a) * x + b) % p_;
    order += roots_[rhs];
  }
  const auto trace = static_cast<std::int64_t>(p_ + 1) - static_cast<std::int64_t>(order);
  return {p_, order, trace};
}

TraceRecord count_points_exhaustive(const Curve& c) {
  if (c.modulus > PointCounter::kMaxPrime)
    throw PreconditionError("count_points_exhaustive: modulus exceeds 10^5");
  PointCounter counter(to_u64(c.modulus));
  return counter.count(to_u64(reduce(c.a, c.modulus)), to_u64(reduce(c.b, c.modulus)));
}

std::pair<std::uint64_t, std::uint64_t> hasse_interval(std::uint64_t p) {
  // |trace| <= 2 sqrt(p)  <=>  trace^2 <= 4p.
  Integer s;
  Integer four_p = from_u64(p) * 4;
  mpz_sqrt(s.get_mpz_t(), four_p.get_mpz_t());
  const std::uint64_t w = to_u64(s);
  return {p + 1 - w, p + 1 + w};
}

}  // namespace factorlab
