#ifndef FACTORLAB_ECM_HPP
#define FACTORLAB_ECM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "factorlab/curves.hpp"
#include "factorlab/factorization.hpp"
#include "factorlab/numtheory.hpp"
#include "factorlab/primes.hpp"

namespace factorlab {

/// Raised when the requested factor base makes r unreasonably large.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stage-1 parameters for one modulus N.
///
/// r is the least integer with p_k^r >= N, each curve batch has r + 2 curves,
/// and prime p_i is applied with exponent e_i = max{e : p_i^(2e) <= N}, i.e.
/// p_i^e_i <= sqrt(N).
struct EcmConfig {
  Integer n;
  FactorBase factor_base;
  unsigned r = 0;
  unsigned batch = 0;
  std::vector<unsigned> exponent_caps;  // e_i for i = 1..k, 0-based storage
  std::size_t max_batches = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;  // 0 = hardware concurrency

  std::size_t k() const { return factor_base.k(); }
  /// prod_i p_i^e_i, the total multiplier each curve receives.
  Integer multiplier() const;
};

struct EcmLimits {
  unsigned max_r = 100;
};

/// Least r >= 1 with base^r >= n, computed exactly; stops early at `cap`.
unsigned least_power_at_least(const Integer& n, std::uint64_t base, unsigned cap);

/// Builds the configuration. Requires N >= 5 odd composite, not a perfect
/// power, and k >= 2. Throws ConfigError when r exceeds limits.max_r.
EcmConfig make_config(const Integer& n, std::size_t k, std::size_t max_batches, std::uint64_t seed,
                      EcmLimits limits = {});

/// What happened to a single curve during stage 1.
struct CurveTrial {
  enum class Result {
    Factor,       // a proper divisor surfaced
    Collapsed,    // the point became the identity modulo N itself
    Survived,     // full multiplier applied without incident
    Singular,     // no non-singular curve within the retry cap
  };

  Result result = Result::Survived;
  std::size_t curve_index = 0;  // global: batch * batch_size + position
  std::size_t prime_index = 0;  // 1-based i at which it stopped; 0 if during setup
  Integer divisor;              // valid for Factor
  Curve curve;
  CurvePoint start = CurvePoint::identity();
  CurvePoint final_point = CurvePoint::identity();
  Integer applied;              // multiplier applied before stopping
};

/// Stage 1 on the curve with the given global index, seeded by cfg.seed + index.
CurveTrial run_curve(const EcmConfig& cfg, std::size_t curve_index);

/// Stage 1 on an explicit curve and starting point.
CurveTrial run_curve_on(const EcmConfig& cfg, const Curve& curve, const CurvePoint& start,
                        std::size_t curve_index = 0);

struct EcmFactor {
  Integer divisor;
  std::size_t curve_index;
  std::size_t prime_index;
  std::size_t batch;
};

struct EcmExhausted {
  std::size_t batches_run;
  std::size_t curves_run;
};

struct EcmStats {
  std::size_t curves_run = 0;
  std::size_t collapsed = 0;
  std::size_t singular = 0;
};

struct EcmOutcome {
  std::variant<EcmFactor, EcmExhausted> result;
  EcmStats stats;

  bool found() const { return std::holds_alternative<EcmFactor>(result); }
  const EcmFactor& factor() const { return std::get<EcmFactor>(result); }
};

/// Runs up to cfg.max_batches batches of cfg.batch curves. Curves in a batch
/// may run concurrently; the reported factor is the one from the lowest curve
/// index in the earliest batch that produced any, so the outcome is
/// independent of the worker count.
EcmOutcome ecm_stage1(const EcmConfig& cfg);

struct FactorizationOptions {
  std::size_t k = 100;
  std::size_t max_batches = 50;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  EcmLimits limits;
};

/// Trial division over the factor base, then recursive ECM splitting with
/// perfect-power and probable-prime screening of every cofactor.
Factorization full_factorization(const Integer& n, const FactorizationOptions& options);

}  // namespace factorlab

#endif  // FACTORLAB_ECM_HPP
