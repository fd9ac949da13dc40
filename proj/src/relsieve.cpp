#include "factorlab/relsieve.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "factorlab/parallel.hpp"

namespace factorlab {

namespace {

constexpr std::size_t kChunk = 1024;
constexpr std::size_t kChunksPerRound = 16;

struct Hit {
  std::size_t sample;
  Relation relation;
};

Integer draw_candidate(const SieveContext& ctx, std::mt19937_64& rng) {
  return random_between(2, ctx.n - 2, rng);
}

}  // namespace

Integer relation_lhs(const SieveContext& ctx, const Relation& rel) {
  if (ctx.strategy == SamplingStrategy::PowerOfBase) return mod_pow(ctx.g, rel.t, ctx.n);
  Integer x = rel.t % ctx.n;
  if (x < 0) x += ctx.n;
  return (x * x) % ctx.n;
}

Integer relation_rhs(const SieveContext& ctx, const Relation& rel) {
  Integer acc = 1;
  for (std::size_t j = 0; j < rel.nu.size(); ++j) {
    if (rel.nu[j] == 0) continue;
    acc = (acc * mod_pow(from_u64(ctx.factor_base.primes()[j]), rel.nu[j], ctx.n)) % ctx.n;
  }
  return acc;
}

bool verify_relation(const SieveContext& ctx, const Relation& rel) {
  if (rel.nu.size() != ctx.factor_base.k()) return false;
  return relation_lhs(ctx, rel) == relation_rhs(ctx, rel);
}

CollectResult collect_relations(const SieveContext& ctx, std::size_t target, std::size_t budget,
                                std::uint64_t seed, unsigned workers) {
  if (target < ctx.factor_base.k() + 2)
    throw PreconditionError("collect_relations: target must be >= k + 2");
  CollectResult result;
  if (ctx.strategy == SamplingStrategy::PowerOfBase) {
    Integer g = gcd(ctx.g % ctx.n, ctx.n);
    if (g != 1) {
      result.free_divisor = g;
      return result;
    }
  }

  std::set<Integer> seen;
  std::size_t next_chunk = 0;
  while (result.relations.size() < target) {
    const std::size_t first_sample = next_chunk * kChunk;
    if (first_sample >= budget) break;
    const std::size_t chunks =
        std::min(kChunksPerRound, (budget - first_sample + kChunk - 1) / kChunk);

    std::vector<std::vector<Hit>> found(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
      const std::size_t chunk = next_chunk + c;
      auto rng = stream_engine(seed, chunk);
      const std::size_t begin = chunk * kChunk;
      const std::size_t end = std::min(begin + kChunk, budget);
      for (std::size_t s = begin; s < end; ++s) {
        Relation rel{draw_candidate(ctx, rng), {}};
        auto dec = smooth_decompose(relation_lhs(ctx, rel), ctx.factor_base);
        if (!dec.smooth()) continue;
        rel.nu = std::move(dec.exponents);
        found[c].push_back({s, std::move(rel)});
      }
    });

    std::size_t last_sample = std::min((next_chunk + chunks) * kChunk, budget);
    for (auto& chunk_hits : found) {
      for (auto& hit : chunk_hits) {
        if (result.relations.size() >= target) break;
        ++result.smooth_hits;
        if (!seen.insert(hit.relation.t).second) continue;
        result.relations.push_back(std::move(hit.relation));
        if (result.relations.size() == target) last_sample = hit.sample + 1;
      }
    }
    result.samples = last_sample;
    next_chunk += chunks;
  }
  return result;
}

Gf2Matrix parity_matrix(const SieveContext& ctx, const std::vector<Relation>& rels) {
  const std::size_t k = ctx.factor_base.k();
  const bool with_t = ctx.strategy == SamplingStrategy::PowerOfBase;
  Gf2Matrix m(rels.size(), k + (with_t ? 1 : 0));
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j)
      if (rels[i].nu[j] & 1U) m.row(i).set(j);
    if (with_t && mpz_odd_p(rels[i].t.get_mpz_t())) m.row(i).set(k);
  }
  return m;
}

std::vector<DependencySet> find_dependencies(const SieveContext& ctx,
                                             const std::vector<Relation>& rels) {
  if (rels.empty()) throw PreconditionError("find_dependency: no relations");
  std::vector<DependencySet> deps;
  for (auto& tau : left_null_space(parity_matrix(ctx, rels))) deps.push_back({std::move(tau)});
  return deps;
}

std::optional<DependencySet> find_dependency(const SieveContext& ctx,
                                             const std::vector<Relation>& rels) {
  auto deps = find_dependencies(ctx, rels);
  if (deps.empty()) return std::nullopt;
  return std::move(deps.front());
}

SquareCongruence build_congruence(const SieveContext& ctx, const std::vector<Relation>& rels,
                                  const DependencySet& dep) {
  const std::size_t k = ctx.factor_base.k();
  const Integer& n = ctx.n;
  std::vector<Integer> u(k, 0);
  Integer t_sum = 0;
  Integer x_product = 1;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (!dep.tau.get(i)) continue;
    for (std::size_t j = 0; j < k; ++j) u[j] += rels[i].nu[j];
    if (ctx.strategy == SamplingStrategy::PowerOfBase)
      t_sum += rels[i].t;
    else
      x_product = (x_product * rels[i].t) % n;
  }

  SquareCongruence sc;
  if (ctx.strategy == SamplingStrategy::PowerOfBase) {
    if (mpz_odd_p(t_sum.get_mpz_t())) throw std::logic_error("build_congruence: odd exponent sum");
    sc.x = mod_pow(ctx.g, t_sum / 2, n);
  } else {
    sc.x = x_product;
  }
  sc.y = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (mpz_odd_p(u[j].get_mpz_t())) throw std::logic_error("build_congruence: odd prime exponent");
    if (u[j] == 0) continue;
    sc.y = (sc.y * mod_pow(from_u64(ctx.factor_base.primes()[j]), u[j] / 2, n)) % n;
  }
  if ((sc.x * sc.x) % n != (sc.y * sc.y) % n)
    throw std::logic_error("build_congruence: X^2 != Y^2 mod N");
  return sc;
}

std::optional<Integer> extract_factor(const Integer& n, const SquareCongruence& sc) {
  Integer diff = (sc.x - sc.y) % n;
  if (diff < 0) diff += n;
  if (diff == 0) return std::nullopt;
  Integer d = gcd(diff, n);
  if (d > 1 && d < n) return d;
  return std::nullopt;
}

SieveOutcome sieve_factor(const Integer& n, const SieveOptions& options) {
  if (n < 5 || mpz_even_p(n.get_mpz_t())) throw PreconditionError("sieve: N must be odd and >= 5");
  if (is_probable_prime(n)) throw PreconditionError("sieve: N is prime");
  if (perfect_power(n)) throw PreconditionError("sieve: N is a perfect power");
  if (options.k < 1) throw PreconditionError("sieve: k must be >= 1");

  SieveOutcome out;
  SieveContext ctx{n, 0, build_factor_base(options.k), options.strategy};

  // A base prime dividing N makes every relation degenerate; report it directly.
  for (std::uint64_t p : ctx.factor_base.primes()) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) && from_u64(p) != n) {
      out.factor = from_u64(p);
      return out;
    }
  }

  auto base_rng = stream_engine(options.seed, ~std::uint64_t{0});
  // First base: the least prime beyond the factor base.
  Integer g = from_u64(ctx.factor_base.largest());
  mpz_nextprime(g.get_mpz_t(), g.get_mpz_t());
  g %= n;

  const std::size_t target = ctx.factor_base.k() + 1 + std::max<std::size_t>(options.extra_relations, 1);
  std::size_t remaining = options.budget;

  for (std::uint64_t attempt = 0; remaining > 0; ++attempt) {
    if (g < 2) g = random_between(2, n - 2, base_rng);
    ctx.g = g;
    ++out.diagnostics.bases_tried;

    auto collected = collect_relations(ctx, target, remaining, options.seed + attempt, options.workers);
    out.diagnostics.samples += collected.samples;
    remaining -= std::min(remaining, collected.samples);
    if (collected.free_divisor) {
      out.factor = collected.free_divisor;
      return out;
    }
    out.diagnostics.relations += collected.relations.size();
    out.base = ctx.g;
    out.relations = collected.relations;

    if (!collected.relations.empty()) {
      for (const auto& dep : find_dependencies(ctx, collected.relations)) {
        ++out.diagnostics.dependencies_tried;
        auto sc = build_congruence(ctx, collected.relations, dep);
        out.congruences.push_back(sc);
        if (auto d = extract_factor(n, sc)) {
          out.factor = d;
          return out;
        }
        ++out.diagnostics.trivial_dependencies;
      }
    }
    g = random_between(2, n - 2, base_rng);
  }
  return out;
}

Factorization sieve_full_factorization(const Integer& n, const SieveOptions& options) {
  return factor_completely(n, options.k, [&](const Integer& value, std::uint64_t attempt) {
    SieveOptions per_split = options;
    per_split.seed = options.seed + attempt;
    return sieve_factor(value, per_split).factor;
  });
}

void write_relations(std::ostream& out, const std::vector<Relation>& rels) {
  for (const auto& rel : rels) {
    out << rel.t.get_str() << ' ';
    for (std::size_t j = 0; j < rel.nu.size(); ++j) {
      if (j != 0) out << ',';
      out << rel.nu[j];
    }
    out << '\n';
  }
}

std::vector<Relation> read_relations(std::istream& in, std::size_t k) {
  std::vector<Relation> rels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return std::runtime_error("relation line " + std::to_string(line_no) + ": " + why);
    };
    const auto space = line.find(' ');
    if (space == std::string::npos) throw fail("missing separator");
    Relation rel;
    try {
      rel.t = parse_integer(std::string_view(line).substr(0, space));
    } catch (const std::invalid_argument&) {
      throw fail("bad t value");
    }
    std::stringstream fields(line.substr(space + 1));
    std::string field;
    while (std::getline(fields, field, ',')) {
      if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
        throw fail("bad exponent '" + field + "'");
      rel.nu.push_back(static_cast<std::uint32_t>(std::stoul(field)));
    }
    if (rel.nu.size() != k)
      throw fail("expected " + std::to_string(k) + " exponents, got " + std::to_string(rel.nu.size()));
    rels.push_back(std::move(rel));
  }
  return rels;
}

std::vector<Relation> load_relations(std::istream& in, const SieveContext& ctx) {
  auto rels = read_relations(in, ctx.factor_base.k());
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (!verify_relation(ctx, rels[i]))
      throw std::runtime_error("relation " + std::to_string(i + 1) + " fails its congruence");
  return rels;
}

}  // namespace factorlab
