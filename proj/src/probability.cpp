#include "factorlab/probability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "factorlab/parallel.hpp"

namespace factorlab {

namespace {

constexpr std::size_t kTrialChunk = 4096;

Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::uint64_t draw_between(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

}  // namespace

DivisibilityCount divisibility_count(const IntervalSpec& iv, const Integer& z) {
  if (z < 2) throw PreconditionError("divisibility_count: z must be >= 2");
  if (iv.hi < iv.lo) throw PreconditionError("divisibility_count: empty interval");
  Integer upper, lower;
  mpz_fdiv_q(upper.get_mpz_t(), iv.hi.get_mpz_t(), z.get_mpz_t());
  mpz_cdiv_q(lower.get_mpz_t(), iv.lo.get_mpz_t(), z.get_mpz_t());
  DivisibilityCount out;
  out.count = upper - lower + 1;
  if (out.count < 0) out.count = 0;
  out.frequency = Rational(out.count, iv.size());
  out.frequency.canonicalize();
  return out;
}

Prop1Check check_prop1(const IntervalSpec& iv, const Integer& z) {
  if (z < 2) throw PreconditionError("check_prop1: z must be >= 2");
  if (iv.width() < 2) throw PreconditionError("check_prop1: hi - lo must be >= 2");
  auto counted = divisibility_count(iv, z);
  Prop1Check out;
  out.interval = iv;
  out.z = z;
  out.count = counted.count;
  out.frequency = counted.frequency;
  out.literal_frequency = Rational(counted.count, iv.width());
  out.literal_frequency.canonicalize();
  out.tolerance = Rational(1, iv.width());
  out.tolerance.canonicalize();
  const Rational expected(1, z);
  out.deviation = abs_rational(out.frequency - expected);
  out.literal_deviation = abs_rational(out.literal_frequency - expected);
  out.slack = out.tolerance - std::max(out.deviation, out.literal_deviation);
  out.holds = out.deviation <= out.tolerance && out.literal_deviation <= out.tolerance;
  return out;
}

Prop2Bound prop2_bound(std::size_t k, unsigned r, std::uint64_t p, bool approximate) {
  if (k < 2) throw PreconditionError("prop2_bound: k must be >= 2");
  const auto fb = build_factor_base(k + 1);
  const std::uint64_t next = fb.prime(k + 1);
  if (p < next) throw PreconditionError("prop2_bound: p must be >= p_{k+1}");
  if (!is_probable_prime(from_u64(p))) throw PreconditionError("prop2_bound: p must be prime");

  Prop2Bound out;
  out.k = k;
  out.r = r;
  out.p = p;
  out.next_prime = next;
  out.approximate = approximate;
  const double rr = r;
  const double numerator = (rr + 2) * (rr + 1) + 8;
  if (approximate) {
    const double lk = std::log(static_cast<double>(k) + 1);
    out.bound = numerator / (8.0 * static_cast<double>(k) * lk * lk);
  } else {
    out.bound = numerator / (8.0 * static_cast<double>(next - 1));
  }
  const double sp = std::sqrt(static_cast<double>(p));
  out.correction = ((rr + 2) * (rr + 1) / 8.0) * std::log(std::log(static_cast<double>(p))) / sp;
  out.small_corrections = {std::log(2.0 * std::log(sp + 1.0)) / sp, 1.0 / (4.0 * sp),
                           4.0 / (sp * std::log(4.0 * sp))};
  out.vacuous = out.bound >= 1.0;
  return out;
}

bool is_smooth(std::uint64_t n, const FactorBase& fb) {
  if (n == 0) return false;
  for (std::uint64_t p : fb.primes()) {
    if (n == 1) return true;
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

OrderSampler::OrderSampler(OrderModel model, std::uint64_t p) : model_(model), p_(p) {
  if (p < 5 || !is_probable_prime(from_u64(p))) throw PreconditionError("order sampler: p must be a prime >= 5");
  std::tie(lo_, hi_) = hasse_interval(p);
  if (model == OrderModel::TrueCurveOrder) counter_.emplace(p);
}

std::uint64_t OrderSampler::draw(std::mt19937_64& rng) const {
  if (model_ == OrderModel::UniformOrder) return draw_between(lo_, hi_, rng);
  // Same construction as the factoring curves: random a and start point, b derived.
  for (int attempt = 0; attempt < 100; ++attempt) {
    const std::uint64_t a = draw_between(0, p_ - 1, rng);
    const std::uint64_t x = draw_between(0, p_ - 1, rng);
    const std::uint64_t y = draw_between(0, p_ - 1, rng);
    const std::uint64_t x3 = x * x % p_ * x % p_;
    const std::uint64_t b = (y * y % p_ + 2 * p_ - x3 - a * x % p_) % p_;
    const std::uint64_t disc = (4 * (a * a % p_ * a % p_) + 27 * (b * b % p_)) % p_;
    if (disc == 0) continue;
    return counter_->count(a, b).order;
  }
  throw std::runtime_error("order sampler: no non-singular curve in 100 attempts");
}

ExperimentReport sample_event_Ek1(const Prop2Params& params, const FactorBase& fb, unsigned workers) {
  if (params.trials < 1) throw PreconditionError("experiment: trials must be >= 1");
  if (fb.k() != params.k) throw PreconditionError("experiment: factor base size differs from k");
  if (params.model == OrderModel::TrueCurveOrder && params.p > PointCounter::kMaxPrime)
    throw PreconditionError("experiment: true curve orders need p <= 10^5");

  const auto bound = prop2_bound(params.k, params.r, params.p, false);
  const OrderSampler sampler(params.model, params.p);
  const std::size_t curves = params.r + 2;

  const std::size_t chunks = (params.trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<std::uint64_t> chunk_hits(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    auto rng = stream_engine(params.seed, c);
    const std::size_t begin = c * kTrialChunk;
    const std::size_t end = std::min(begin + kTrialChunk, params.trials);
    std::uint64_t hits = 0;
    for (std::size_t t = begin; t < end; ++t) {
      bool all_rough = true;
      // Always draw every order so the stream layout is fixed.
      for (std::size_t l = 0; l < curves; ++l)
        if (is_smooth(sampler.draw(rng), fb)) all_rough = false;
      if (all_rough) ++hits;
    }
    chunk_hits[c] = hits;
  });

  ExperimentReport report;
  report.params = params;
  report.next_prime = bound.next_prime;
  for (auto h : chunk_hits) report.hits += h;
  const double n = static_cast<double>(params.trials);
  report.empirical_frequency = static_cast<double>(report.hits) / n;
  report.standard_error =
      std::sqrt(report.empirical_frequency * (1.0 - report.empirical_frequency) / n);
  report.analytic_bound = bound.bound;
  report.correction = bound.correction;
  report.small_corrections = bound.small_corrections;
  report.threshold = bound.bound + bound.correction + 3.0 * report.standard_error;
  if (bound.vacuous)
    report.verdict = Verdict::BoundVacuous;
  else if (report.empirical_frequency <= report.threshold)
    report.verdict = Verdict::WithinBound;
  else
    report.verdict = Verdict::Exceeds;
  report.model_note = params.model == OrderModel::UniformOrder
                          ? "orders uniform on the Hasse interval (modeling assumption; "
                            "samples need not be realizable curve orders)"
                          : "exact orders of random curves mod p by exhaustive point count";
  return report;
}

SmoothnessProfile smoothness_profile(std::uint64_t p, const FactorBase& fb, std::size_t samples,
                                     std::uint64_t seed, OrderModel model, unsigned workers) {
  if (samples < 1) throw PreconditionError("smoothness_profile: samples must be >= 1");
  const OrderSampler sampler(model, p);
  const auto [lo, hi] = hasse_interval(p);
  const std::size_t k = fb.k();

  const std::size_t chunks = (samples + kTrialChunk - 1) / kTrialChunk;
  std::vector<std::vector<std::uint64_t>> divisible(chunks, std::vector<std::uint64_t>(k, 0));
  std::vector<std::uint64_t> smooth(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t c) {
    auto rng = stream_engine(seed, c);
    const std::size_t begin = c * kTrialChunk;
    const std::size_t end = std::min(begin + kTrialChunk, samples);
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t order = sampler.draw(rng);
      for (std::size_t j = 0; j < k; ++j)
        if (order % fb.primes()[j] == 0) ++divisible[c][j];
      if (is_smooth(order, fb)) ++smooth[c];
    }
  });

  SmoothnessProfile out;
  out.p = p;
  out.model = model;
  out.samples = samples;
  for (auto s : smooth) out.smooth_count += s;
  const double n = static_cast<double>(samples);
  out.smooth_fraction = static_cast<double>(out.smooth_count) / n;
  for (std::size_t j = 0; j < k; ++j) {
    ProfileRow row;
    row.prime = fb.primes()[j];
    for (std::size_t c = 0; c < chunks; ++c) row.hits += divisible[c][j];
    row.frequency = static_cast<double>(row.hits) / n;
    row.expected = 1.0 / static_cast<double>(row.prime);
    row.allowance = 1.0 / static_cast<double>(hi - lo);
    row.standard_error = std::sqrt(row.expected * (1.0 - row.expected) / n);
    row.within = std::abs(row.frequency - row.expected) <= row.allowance + 3.0 * row.standard_error;
    out.rows.push_back(row);
  }
  return out;
}

std::string to_string(OrderModel model) {
  return model == OrderModel::UniformOrder ? "uniform" : "true-curve";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::WithinBound: return "WithinBound";
    case Verdict::Exceeds: return "Exceeds";
    case Verdict::BoundVacuous: return "BoundVacuous";
  }
  return "unknown";
}

OrderModel parse_order_model(const std::string& text) {
  if (text == "uniform") return OrderModel::UniformOrder;
  if (text == "true-curve") return OrderModel::TrueCurveOrder;
  throw std::invalid_argument("unknown order model '" + text + "' (expected uniform or true-curve)");
}

Verdict parse_verdict(const std::string& text) {
  if (text == "WithinBound") return Verdict::WithinBound;
  if (text == "Exceeds") return Verdict::Exceeds;
  if (text == "BoundVacuous") return Verdict::BoundVacuous;
  throw std::invalid_argument("unknown verdict '" + text + "'");
}

}  // namespace factorlab
