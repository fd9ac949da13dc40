#ifndef FACTORLAB_PROBABILITY_HPP
#define FACTORLAB_PROBABILITY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "factorlab/curves.hpp"
#include "factorlab/numtheory.hpp"
#include "factorlab/primes.hpp"

namespace factorlab {

using Rational = mpq_class;

/// Closed integer interval [lo, hi], lo < hi. The width hi - lo is explicit
/// in every bound; it is never assumed to be large.
struct IntervalSpec {
  Integer lo;
  Integer hi;

  Integer width() const { return hi - lo; }
  Integer size() const { return hi - lo + 1; }
};

struct DivisibilityCount {
  Integer count;
  Rational frequency;  // count / (hi - lo + 1)
};

/// Exact number of multiples of z in [lo, hi] by floor arithmetic.
DivisibilityCount divisibility_count(const IntervalSpec& iv, const Integer& z);

/// Exact check of 1/z - 1/(hi-lo) <= Pr[z | X] <= 1/z + 1/(hi-lo).
///
/// Two readings of Pr[z | X] are evaluated: the natural one, count / (hi-lo+1),
/// and the literal one that divides by hi - lo as the classical counting
/// argument does. `holds` requires both.
struct Prop1Check {
  IntervalSpec interval;
  Integer z;
  Integer count;
  Rational frequency;
  Rational literal_frequency;
  Rational tolerance;
  Rational deviation;          // |frequency - 1/z|
  Rational literal_deviation;  // |literal_frequency - 1/z|
  Rational slack;              // tolerance - max(deviation, literal_deviation)
  bool holds = false;
};

Prop1Check check_prop1(const IntervalSpec& iv, const Integer& z);

/// Upper bound on the chance that all r + 2 curve orders have a prime factor
/// >= p_{k+1}, plus its correction terms.
struct Prop2Bound {
  std::size_t k = 0;
  unsigned r = 0;
  std::uint64_t p = 0;
  std::uint64_t next_prime = 0;  // p_{k+1}
  bool approximate = false;
  /// ((r+2)(r+1)+8) / (8 (p_{k+1} - 1)), or with 8 k ln(k+1)^2 when approximate.
  double bound = 0;
  /// ((r+2)(r+1)/8) ln(ln p) / sqrt(p): the big-O term with unit constant.
  double correction = 0;
  /// ln(2 ln(sqrt p + 1)) / sqrt p,  1 / (4 sqrt p),  4 / (sqrt p ln(4 sqrt p)).
  std::array<double, 3> small_corrections{};
  bool vacuous = false;  // bound >= 1
};

/// Requires k >= 2 and p a prime >= p_{k+1}.
Prop2Bound prop2_bound(std::size_t k, unsigned r, std::uint64_t p, bool approximate);

enum class OrderModel { UniformOrder, TrueCurveOrder };

struct Prop2Params {
  std::size_t k = 25;
  unsigned r = 3;
  std::uint64_t p = 10007;
  std::size_t trials = 100'000;
  std::uint64_t seed = 0;
  OrderModel model = OrderModel::UniformOrder;

  friend bool operator==(const Prop2Params&, const Prop2Params&) = default;
};

enum class Verdict { WithinBound, Exceeds, BoundVacuous };

struct ExperimentReport {
  Prop2Params params;
  std::uint64_t next_prime = 0;
  std::uint64_t hits = 0;
  double empirical_frequency = 0;
  double standard_error = 0;  // binomial sqrt(f(1-f)/trials)
  double analytic_bound = 0;
  double correction = 0;
  std::array<double, 3> small_corrections{};
  double threshold = 0;  // bound + correction + 3 sigma
  Verdict verdict = Verdict::WithinBound;
  std::string model_note;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Draws r + 2 independent group orders mod p per trial and records whether
/// every one of them has a prime factor above p_k. Deterministic in
/// (params, seed) for any worker count. TrueCurveOrder requires p <= 10^5.
ExperimentReport sample_event_Ek1(const Prop2Params& params, const FactorBase& fb,
                                  unsigned workers = 1);

/// Draws one group order mod p under the given model.
class OrderSampler {
 public:
  OrderSampler(OrderModel model, std::uint64_t p);

  std::uint64_t draw(std::mt19937_64& rng) const;
  OrderModel model() const { return model_; }

 private:
  OrderModel model_;
  std::uint64_t p_;
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::optional<PointCounter> counter_;
};

/// True when every prime factor of n is in the factor base.
bool is_smooth(std::uint64_t n, const FactorBase& fb);

struct ProfileRow {
  std::uint64_t prime = 0;
  std::uint64_t hits = 0;
  double frequency = 0;
  double expected = 0;   // 1 / prime
  double allowance = 0;  // 1 / (Hasse interval width)
  double standard_error = 0;
  bool within = false;   // |frequency - expected| <= allowance + 3 sigma
};

struct SmoothnessProfile {
  std::uint64_t p = 0;
  OrderModel model = OrderModel::TrueCurveOrder;
  std::size_t samples = 0;
  std::uint64_t smooth_count = 0;
  double smooth_fraction = 0;
  std::vector<ProfileRow> rows;  // one per factor-base prime
};

SmoothnessProfile smoothness_profile(std::uint64_t p, const FactorBase& fb, std::size_t samples,
                                     std::uint64_t seed,
                                     OrderModel model = OrderModel::TrueCurveOrder,
                                     unsigned workers = 1);

std::string to_string(OrderModel model);
std::string to_string(Verdict verdict);
OrderModel parse_order_model(const std::string& text);
Verdict parse_verdict(const std::string& text);

}  // namespace factorlab

#endif  // FACTORLAB_PROBABILITY_HPP
