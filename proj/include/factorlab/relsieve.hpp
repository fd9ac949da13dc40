#ifndef FACTORLAB_RELSIEVE_HPP
#define FACTORLAB_RELSIEVE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "factorlab/factorization.hpp"
#include "factorlab/gf2.hpp"
#include "factorlab/numtheory.hpp"
#include "factorlab/primes.hpp"

namespace factorlab {

/// How relation candidates are drawn.
enum class SamplingStrategy {
  /// g^t mod N for uniform t; relation g^t = prod p_j^nu_j (mod N).
  PowerOfBase,
  /// x^2 mod N for uniform x (Dixon); relation x^2 = prod p_j^nu_j (mod N).
  RandomSquares,
};

/// A smooth relation. Under PowerOfBase `t` is the exponent of g; under
/// RandomSquares it is the square root x.
struct Relation {
  Integer t;
  std::vector<std::uint32_t> nu;

  friend bool operator==(const Relation&, const Relation&) = default;
};

struct SieveContext {
  Integer n;
  Integer g;
  FactorBase factor_base;
  SamplingStrategy strategy = SamplingStrategy::PowerOfBase;
};

/// GF(2) combination of relations whose exponent sums are all even.
struct DependencySet {
  BitVector tau;
};

/// X^2 = Y^2 (mod N).
struct SquareCongruence {
  Integer x;
  Integer y;
};

struct CollectResult {
  std::vector<Relation> relations;
  std::size_t samples = 0;   // candidates drawn up to the last kept relation (or the budget)
  std::size_t smooth_hits = 0;
  std::optional<Integer> free_divisor;  // gcd(g, N) or gcd(x, N) was nontrivial

  double hit_rate() const { return samples == 0 ? 0.0 : double(smooth_hits) / double(samples); }
};

/// Left-hand side of a relation, reduced mod N.
Integer relation_lhs(const SieveContext& ctx, const Relation& rel);
/// prod p_j^nu_j mod N.
Integer relation_rhs(const SieveContext& ctx, const Relation& rel);
bool verify_relation(const SieveContext& ctx, const Relation& rel);

/// Draws candidates until `target` distinct relations are kept or `budget`
/// candidates have been drawn. Deterministic in (ctx, seed) for any worker count.
CollectResult collect_relations(const SieveContext& ctx, std::size_t target, std::size_t budget,
                                std::uint64_t seed, unsigned workers = 1);

/// Parity matrix: one row per relation, columns nu_1..nu_k and, under
/// PowerOfBase, the parity of t.
Gf2Matrix parity_matrix(const SieveContext& ctx, const std::vector<Relation>& rels);

/// All null-space basis vectors of the parity matrix, in elimination order.
std::vector<DependencySet> find_dependencies(const SieveContext& ctx, const std::vector<Relation>& rels);

/// First null-space vector, or nothing if the parity matrix has full row rank.
std::optional<DependencySet> find_dependency(const SieveContext& ctx, const std::vector<Relation>& rels);

/// X = g^(T/2) (or prod x_i), Y = prod p_j^(u_j/2). Throws std::logic_error
/// if the dependency is not even or X^2 != Y^2, which means an arithmetic bug.
SquareCongruence build_congruence(const SieveContext& ctx, const std::vector<Relation>& rels,
                                  const DependencySet& dep);

/// gcd(X - Y, N) when it is a proper divisor.
std::optional<Integer> extract_factor(const Integer& n, const SquareCongruence& sc);

struct SieveOptions {
  std::size_t k = 100;
  std::uint64_t seed = 0;
  std::size_t budget = 1'000'000;  // total candidates across all bases
  std::size_t extra_relations = 10;  // collected beyond k + 1
  unsigned workers = 1;
  SamplingStrategy strategy = SamplingStrategy::PowerOfBase;
};

struct SieveDiagnostics {
  std::size_t samples = 0;
  std::size_t relations = 0;
  std::size_t bases_tried = 0;
  std::size_t dependencies_tried = 0;
  std::size_t trivial_dependencies = 0;
};

struct SieveOutcome {
  std::optional<Integer> factor;
  SieveDiagnostics diagnostics;
  std::vector<SquareCongruence> congruences;  // every congruence built, in order
  Integer base;                     // g of the last collection round
  std::vector<Relation> relations;  // relations of the last collection round

  bool found() const { return factor.has_value(); }
};

/// Collect, eliminate, build congruences, extract; on trivial-only
/// dependencies a fresh base g is drawn. Requires N odd composite, not a
/// perfect power.
SieveOutcome sieve_factor(const Integer& n, const SieveOptions& options);

/// Trial division, then sieve_factor on every composite cofactor.
Factorization sieve_full_factorization(const Integer& n, const SieveOptions& options);

/// One relation per line: decimal t, a space, comma-separated exponents.
void write_relations(std::ostream& out, const std::vector<Relation>& rels);
/// Parses the line format; throws std::runtime_error naming the bad line.
std::vector<Relation> read_relations(std::istream& in, std::size_t k);
/// read_relations followed by verify_relation on every entry.
std::vector<Relation> load_relations(std::istream& in, const SieveContext& ctx);

}  // namespace factorlab

#endif  // FACTORLAB_RELSIEVE_HPP
