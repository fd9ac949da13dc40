#ifndef FACTORLAB_CURVES_HPP
#define FACTORLAB_CURVES_HPP

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "factorlab/numtheory.hpp"

namespace factorlab {

/// y^2 = x^3 + a x + b over Z_m, m odd and >= 5. When m is composite this is
/// the usual pseudo-group: operations are defined except where an inversion
/// exposes a factor of m.
struct Curve {
  Integer a;
  Integer b;
  Integer modulus;
};

/// Affine point or the point at infinity.
class CurvePoint {
 public:
  static CurvePoint identity() { return CurvePoint(); }
  static CurvePoint affine(Integer x, Integer y) { return CurvePoint(std::move(x), std::move(y)); }

  bool is_identity() const { return identity_; }
  const Integer& x() const { return x_; }
  const Integer& y() const { return y_; }

  friend bool operator==(const CurvePoint& lhs, const CurvePoint& rhs) {
    if (lhs.identity_ || rhs.identity_) return lhs.identity_ == rhs.identity_;
    return lhs.x_ == rhs.x_ && lhs.y_ == rhs.y_;
  }

 private:
  CurvePoint() = default;
  CurvePoint(Integer x, Integer y) : identity_(false), x_(std::move(x)), y_(std::move(y)) {}

  bool identity_ = true;
  Integer x_;
  Integer y_;
};

/// A proper divisor d of the modulus, 1 < d < m.
struct DivisorFound {
  Integer divisor;
};

using GroupOpOutcome = std::variant<CurvePoint, DivisorFound>;

struct CurveWithPoint {
  Curve curve;
  CurvePoint point;
};

/// 4a^3 + 27b^2 vanishes modulo m; the caller should draw fresh parameters.
struct SingularCurve {};

using CurveFromPointOutcome = std::variant<CurveWithPoint, SingularCurve, DivisorFound>;

struct TraceRecord {
  std::uint64_t prime;
  std::uint64_t order;
  std::int64_t trace;  // p + 1 - order

  bool within_hasse() const {
    const auto t = static_cast<__int128>(trace);
    return t * t <= static_cast<__int128>(4) * prime;
  }
};

inline bool is_point(const GroupOpOutcome& o) { return std::holds_alternative<CurvePoint>(o); }
inline const CurvePoint& point_of(const GroupOpOutcome& o) { return std::get<CurvePoint>(o); }

/// Curve through (x0, y0) with the given a: b = y0^2 - x0^3 - a x0 mod m.
CurveFromPointOutcome curve_from_point(const Integer& m, const Integer& a, const Integer& x0,
                                       const Integer& y0);

/// Draws (a, x0, y0) uniformly mod m and derives b, retrying singular curves
/// up to `max_attempts` times. Returns SingularCurve if every attempt failed.
CurveFromPointOutcome random_curve(const Integer& m, std::mt19937_64& rng, int max_attempts = 100);

bool on_curve(const Curve& c, const CurvePoint& p);
CurvePoint negate(const Curve& c, const CurvePoint& p);

GroupOpOutcome point_add(const Curve& c, const CurvePoint& p, const CurvePoint& q);
GroupOpOutcome point_double(const Curve& c, const CurvePoint& p);

/// n * P by left-to-right double-and-add; the first DivisorFound is returned.
GroupOpOutcome scalar_mul(const Curve& c, const Integer& n, const CurvePoint& p);

/// Counts #E(F_p) for a fixed prime p by tabulating how many square roots
/// each residue has. Reuse one counter for many curves over the same p.
class PointCounter {
 public:
  static constexpr std::uint64_t kMaxPrime = 100'000;

  /// Throws PreconditionError unless p is a prime in [3, kMaxPrime].
  explicit PointCounter(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  TraceRecord count(std::uint64_t a, std::uint64_t b) const;

 private:
  std::uint64_t p_;
  std::vector<std::uint8_t> roots_;  // number of y with y^2 = v, indexed by v
};

/// Exact group order of a curve over a prime field with p <= 10^5.
TraceRecord count_points_exhaustive(const Curve& c);

/// Integer bounds of the Hasse interval [(sqrt p - 1)^2, (sqrt p + 1)^2].
std::pair<std::uint64_t, std::uint64_t> hasse_interval(std::uint64_t p);

}  // namespace factorlab

#endif  // FACTORLAB_CURVES_HPP
