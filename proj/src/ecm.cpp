#include "factorlab/ecm.hpp"

#include <algorithm>

#include "factorlab/parallel.hpp"

namespace factorlab {

Integer EcmConfig::multiplier() const {
  Integer m = 1;
  for (std::size_t i = 1; i <= k(); ++i) {
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), factor_base.prime(i), exponent_caps[i - 1]);
    m *= pe;
  }
  return m;
}

unsigned least_power_at_least(const Integer& n, std::uint64_t base, unsigned cap) {
  if (base < 2) throw PreconditionError("least_power_at_least: base must be >= 2");
  unsigned r = 1;
  Integer power = from_u64(base);
  while (power < n && r < cap) {
    power *= from_u64(base);
    ++r;
  }
  return r;
}

EcmConfig make_config(const Integer& n, std::size_t k, std::size_t max_batches, std::uint64_t seed,
                      EcmLimits limits) {
  if (n < 5) throw PreconditionError("ecm: N must be >= 5");
  if (mpz_even_p(n.get_mpz_t())) throw PreconditionError("ecm: N must be odd");
  if (is_probable_prime(n)) throw PreconditionError("ecm: N is prime");
  if (perfect_power(n)) throw PreconditionError("ecm: N is a perfect power");
  if (k < 2) throw PreconditionError("ecm: k must be >= 2");

  EcmConfig cfg{.n = n, .factor_base = build_factor_base(k), .r = 0, .batch = 0,
                .exponent_caps = {}, .max_batches = 0, .seed = 0, .workers = 1};
  const std::uint64_t pk = cfg.factor_base.largest();

  const unsigned r = least_power_at_least(n, pk, limits.max_r + 1);
  if (r > limits.max_r)
    throw ConfigError("ecm: p_k = " + std::to_string(pk) + " is too small for N; r exceeds " +
                      std::to_string(limits.max_r) + " (increase k)");
  cfg.r = r;
  cfg.batch = r + 2;

  cfg.exponent_caps.reserve(k);
  for (std::uint64_t p : cfg.factor_base.primes()) {
    unsigned e = 0;
    Integer sq = from_u64(p) * from_u64(p);
    Integer acc = sq;
    while (acc <= n) {
      ++e;
      acc *= sq;
    }
    cfg.exponent_caps.push_back(e);
  }
  cfg.max_batches = max_batches;
  cfg.seed = seed;
  return cfg;
}

CurveTrial run_curve_on(const EcmConfig& cfg, const Curve& curve, const CurvePoint& start,
                        std::size_t curve_index) {
  CurveTrial trial;
  trial.curve_index = curve_index;
  trial.curve = curve;
  trial.start = start;
  trial.applied = 1;

  CurvePoint point = start;
  for (std::size_t i = 1; i <= cfg.k(); ++i) {
    const unsigned e = cfg.exponent_caps[i - 1];
    if (e == 0) continue;
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), cfg.factor_base.prime(i), e);
    auto outcome = scalar_mul(curve, pe, point);
    if (auto* d = std::get_if<DivisorFound>(&outcome)) {
      trial.result = CurveTrial::Result::Factor;
      trial.prime_index = i;
      trial.divisor = d->divisor;
      trial.final_point = point;
      return trial;
    }
    point = point_of(outcome);
    trial.applied *= pe;
    if (point.is_identity()) {
      trial.result = CurveTrial::Result::Collapsed;
      trial.prime_index = i;
      trial.final_point = point;
      return trial;
    }
  }
  trial.result = CurveTrial::Result::Survived;
  trial.prime_index = cfg.k();
  trial.final_point = point;
  return trial;
}

CurveTrial run_curve(const EcmConfig& cfg, std::size_t curve_index) {
  auto rng = stream_engine(cfg.seed + curve_index, 0);
  auto generated = random_curve(cfg.n, rng);

  if (auto* d = std::get_if<DivisorFound>(&generated)) {
    CurveTrial trial;
    trial.result = CurveTrial::Result::Factor;
    trial.curve_index = curve_index;
    trial.divisor = d->divisor;
    trial.applied = 1;
    return trial;
  }
  if (std::holds_alternative<SingularCurve>(generated)) {
    CurveTrial trial;
    trial.result = CurveTrial::Result::Singular;
    trial.curve_index = curve_index;
    trial.applied = 1;
    return trial;
  }
  const auto& cw = std::get<CurveWithPoint>(generated);
  return run_curve_on(cfg, cw.curve, cw.point, curve_index);
}

EcmOutcome ecm_stage1(const EcmConfig& cfg) {
  EcmOutcome outcome{EcmExhausted{0, 0}, {}};
  std::vector<CurveTrial> trials(cfg.batch);

  for (std::size_t batch = 0; batch < cfg.max_batches; ++batch) {
    parallel_for(cfg.batch, cfg.workers, [&](std::size_t pos) {
      trials[pos] = run_curve(cfg, batch * cfg.batch + pos);
    });

    const CurveTrial* best = nullptr;
    for (const auto& t : trials) {
      ++outcome.stats.curves_run;
      if (t.result == CurveTrial::Result::Collapsed) ++outcome.stats.collapsed;
      if (t.result == CurveTrial::Result::Singular) ++outcome.stats.singular;
      if (t.result == CurveTrial::Result::Factor && best == nullptr) best = &t;
    }
    if (best != nullptr) {
      if (best->divisor <= 1 || best->divisor >= cfg.n || cfg.n % best->divisor != 0)
        throw std::logic_error("ecm: reported divisor does not properly divide N");
      outcome.result = EcmFactor{best->divisor, best->curve_index, best->prime_index, batch};
      return outcome;
    }
  }
  outcome.result = EcmExhausted{cfg.max_batches, outcome.stats.curves_run};
  return outcome;
}

Factorization full_factorization(const Integer& n, const FactorizationOptions& options) {
  const std::size_t k = std::max<std::size_t>(options.k, 2);
  return factor_completely(n, k, [&](const Integer& value, std::uint64_t attempt) -> std::optional<Integer> {
    auto cfg = make_config(value, k, options.max_batches, options.seed + attempt, options.limits);
    cfg.workers = options.workers;
    auto result = ecm_stage1(cfg);
    if (!result.found()) return std::nullopt;
    return result.factor().divisor;
  });
}

}  // namespace factorlab
