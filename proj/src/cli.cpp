#include "factorlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "factorlab/ecm.hpp"
#include "factorlab/parallel.hpp"
#include "factorlab/probability.hpp"
#include "factorlab/relsieve.hpp"
#include "factorlab/report.hpp"

namespace factorlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string seed_text;
  unsigned workers = 0;
  std::string format = "text";
  std::string out_path;
  bool verbose = false;
};

constexpr const char* kFlagSummary = R"(Flags by command:
  factor-ecm          --n --k --seed --workers --max-batches --format --out --verbose
  factor-sieve        --n --k --seed --workers --budget --strategy --relations-out --format --out --verbose
  experiment-prop1    --z --lo --hi --workers --format --out
  experiment-prop2    --p --k --r --trials --model --seed --workers --format --out --verbose
  profile-smoothness  --p --k --trials --model --seed --workers --format --out --verbose
Seed falls back to $FACTORLAB_SEED, then 0. Exit codes: 0 success, 1 exhausted/exceeds, 2 usage.)";

std::uint64_t resolve_seed(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("FACTORLAB_SEED");
    if (env == nullptr || *env == '\0') return 0;
    text = env;
  }
  try {
    Integer v = parse_integer(text);
    return to_u64(v);
  } catch (const std::exception&) {
    throw UsageError("invalid seed '" + text + "' (expected a non-negative 64-bit integer)");
  }
}

Integer parse_n(const std::string& text) {
  try {
    return parse_integer(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed N '" + text + "' (decimal or 0x-hex expected)");
  }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const std::string& command) {
  for (const char* a : allowed)
    if (format == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("--format " + format + " is not supported by " + command + " (use " + list + ")");
}

void add_common(CLI::App* cmd, Common& c, bool with_seed) {
  if (with_seed) cmd->add_option("--seed", c.seed_text, "RNG seed (default: $FACTORLAB_SEED or 0)");
  // accepted everywhere so any invocation can pin a worker count; prop1 is serial
  cmd->add_option("--workers", c.workers, "Worker threads (default: available parallelism)");
  cmd->add_option("--format", c.format, "Output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--out", c.out_path, "Write primary output to this file instead of stdout");
}

void log(const Common& c, std::ostream& err, const std::string& line) {
  if (c.verbose) err << "[factorlab] " << line << '\n';
}

unsigned effective_workers(unsigned w) { return w == 0 ? default_workers() : w; }

int factorization_exit(const Factorization& f) { return f.complete() ? kSuccess : kNegative; }

std::string render_factorization(const Factorization& f, const std::string& command,
                                 const std::string& format, const Json& extra) {
  if (format == "json") {
    Json doc{{"command", command}};
    const Json body = to_json(f);
    for (auto& [key, value] : body.items()) doc[key] = value;
    for (auto& [key, value] : extra.items()) doc[key] = value;
    doc["metadata"] = Json{{"tool", "factorlab"}};
    return doc.dump(2) + "\n";
  }
  return format_factorization(f) + "\n";
}

void screen_factor_input(const Integer& n) {
  if (n < 2) throw UsageError("N must be >= 2");
  if (is_probable_prime(n)) throw UsageError("prime input: " + n.get_str() + " has no proper factors");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"factorlab: elliptic-curve and relation-sieve factoring with probability experiments"};
  app.footer(kFlagSummary);
  app.require_subcommand(1);
  Common common;

  // factor-ecm
  std::string ecm_n;
  std::size_t ecm_k = 100;
  std::size_t max_batches = 50;
  auto* ecm = app.add_subcommand("factor-ecm", "Factor N with elliptic-curve stage 1");
  ecm->add_option("--n", ecm_n, "Integer to factor (decimal or 0x-hex)")->required();
  ecm->add_option("--k", ecm_k, "Factor base size (default 100)");
  ecm->add_option("--max-batches", max_batches, "Curve batches of r+2 before giving up (default 50)");
  ecm->add_flag("--verbose", common.verbose, "Log progress to stderr");
  add_common(ecm, common, true);

  // factor-sieve
  std::string sieve_n;
  std::size_t sieve_k = 100;
  std::size_t budget = 1'000'000;
  std::string strategy = "power";
  std::string relations_out;
  auto* sieve = app.add_subcommand("factor-sieve", "Factor N with the relation sieve over GF(2)");
  sieve->add_option("--n", sieve_n, "Integer to factor (decimal or 0x-hex)")->required();
  sieve->add_option("--k", sieve_k, "Factor base size (default 100)");
  sieve->add_option("--budget", budget, "Relation candidates per split (default 10^6)");
  sieve->add_option("--strategy", strategy, "Sampling: power (g^t) or squares (x^2)")
      ->check(CLI::IsMember({"power", "squares"}));
  sieve->add_option("--relations-out", relations_out, "Write the last relation set to this file");
  sieve->add_flag("--verbose", common.verbose, "Log progress to stderr");
  add_common(sieve, common, true);

  // experiment-prop1
  std::string z_text, lo_text, hi_text;
  auto* prop1 = app.add_subcommand("experiment-prop1", "Exact divisibility-frequency check on [lo, hi]");
  prop1->add_option("--z", z_text, "Divisor z >= 2")->required();
  prop1->add_option("--lo", lo_text, "Interval lower end")->required();
  prop1->add_option("--hi", hi_text, "Interval upper end")->required();
  add_common(prop1, common, false);

  // experiment-prop2
  Prop2Params p2;
  std::string p2_model = "uniform";
  auto* prop2 = app.add_subcommand("experiment-prop2", "Monte Carlo frequency of all r+2 orders being non-smooth");
  prop2->add_option("--p", p2.p, "Prime playing the hidden factor (default 10007)");
  prop2->add_option("--k", p2.k, "Factor base size (default 25)");
  prop2->add_option("--r", p2.r, "r; each trial draws r+2 orders (default 3)");
  prop2->add_option("--trials", p2.trials, "Number of trials (default 10^5)");
  prop2->add_option("--model", p2_model, "Order model: uniform or true-curve")
      ->check(CLI::IsMember({"uniform", "true-curve"}));
  prop2->add_flag("--verbose", common.verbose, "Log progress to stderr");
  add_common(prop2, common, true);

  // profile-smoothness
  std::uint64_t prof_p = 10007;
  std::size_t prof_k = 25;
  std::size_t prof_samples = 10'000;
  std::string prof_model = "true-curve";
  auto* profile = app.add_subcommand("profile-smoothness", "Smoothness and per-prime divisibility of curve orders mod p");
  profile->add_option("--p", prof_p, "Prime modulus <= 10^5 (default 10007)");
  profile->add_option("--k", prof_k, "Factor base size (default 25)");
  profile->add_option("--trials", prof_samples, "Number of sampled orders (default 10^4)");
  profile->add_option("--model", prof_model, "Order model: uniform or true-curve (default)")
      ->check(CLI::IsMember({"uniform", "true-curve"}));
  profile->add_flag("--verbose", common.verbose, "Log progress to stderr");
  add_common(profile, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::ostringstream primary;
  int code = kSuccess;
  try {
    const unsigned workers = effective_workers(common.workers);

    if (*ecm) {
      require_format(common.format, {"text", "json"}, "factor-ecm");
      const Integer n = parse_n(ecm_n);
      screen_factor_input(n);
      if (ecm_k < 2) throw UsageError("--k must be >= 2");
      FactorizationOptions opts{ecm_k, max_batches, resolve_seed(common.seed_text), workers, {}};
      log(common, err, "factor-ecm N=" + n.get_str() + " k=" + std::to_string(ecm_k) +
                           " max_batches=" + std::to_string(max_batches) +
                           " workers=" + std::to_string(workers));
      auto f = full_factorization(n, opts);
      primary << render_factorization(f, "factor-ecm", common.format,
                                      Json{{"k", ecm_k}, {"seed", opts.seed}, {"max_batches", max_batches}});
      code = factorization_exit(f);
    } else if (*sieve) {
      require_format(common.format, {"text", "json"}, "factor-sieve");
      const Integer n = parse_n(sieve_n);
      screen_factor_input(n);
      if (sieve_k < 1) throw UsageError("--k must be >= 1");
      SieveOptions opts;
      opts.k = sieve_k;
      opts.seed = resolve_seed(common.seed_text);
      opts.budget = budget;
      opts.workers = workers;
      opts.strategy = strategy == "squares" ? SamplingStrategy::RandomSquares : SamplingStrategy::PowerOfBase;
      log(common, err, "factor-sieve N=" + n.get_str() + " k=" + std::to_string(sieve_k) +
                           " budget=" + std::to_string(budget) + " strategy=" + strategy);

      SieveDiagnostics totals;
      SieveOutcome last;
      auto f = factor_completely(n, opts.k, [&](const Integer& value, std::uint64_t attempt) {
        SieveOptions per = opts;
        per.seed = opts.seed + attempt;
        last = sieve_factor(value, per);
        totals.samples += last.diagnostics.samples;
        totals.relations += last.diagnostics.relations;
        totals.bases_tried += last.diagnostics.bases_tried;
        totals.dependencies_tried += last.diagnostics.dependencies_tried;
        totals.trivial_dependencies += last.diagnostics.trivial_dependencies;
        log(common, err, "split " + value.get_str() + ": samples=" +
                             std::to_string(last.diagnostics.samples) + " trivial=" +
                             std::to_string(last.diagnostics.trivial_dependencies));
        return last.factor;
      });
      if (!relations_out.empty()) {
        std::ofstream rel_file(relations_out);
        if (!rel_file) throw UsageError("cannot open --relations-out " + relations_out);
        write_relations(rel_file, last.relations);
      }
      Json extra{{"k", sieve_k}, {"seed", opts.seed}, {"strategy", strategy},
                 {"diagnostics", to_json(totals)}};
      primary << render_factorization(f, "factor-sieve", common.format, extra);
      code = factorization_exit(f);
    } else if (*prop1) {
      IntervalSpec iv{parse_n(lo_text), parse_n(hi_text)};
      const Integer z = parse_n(z_text);
      if (z < 2) throw UsageError("--z must be >= 2");
      if (iv.width() < 2) throw UsageError("--hi must exceed --lo by at least 2");
      auto check = check_prop1(iv, z);
      if (common.format == "json") {
        primary << to_json(check).dump(2) << '\n';
      } else if (common.format == "csv") {
        primary << prop1_csv_header() << '\n' << prop1_csv_row(check) << '\n';
      } else {
        primary << "z=" << z << " interval=[" << iv.lo << ", " << iv.hi << "] count=" << check.count
                << " frequency=" << to_string(check.frequency) << " |frequency-1/z|="
                << to_string(check.deviation) << " |count/(hi-lo)-1/z|="
                << to_string(check.literal_deviation) << " tolerance=" << to_string(check.tolerance)
                << " slack=" << to_string(check.slack) << " (" << std::setprecision(6)
                << check.slack.get_d() << ") " << (check.holds ? "holds" : "VIOLATED") << '\n';
      }
      code = check.holds ? kSuccess : kNegative;
    } else if (*prop2) {
      p2.seed = resolve_seed(common.seed_text);
      p2.model = parse_order_model(p2_model);
      if (p2.k < 2) throw UsageError("--k must be >= 2");
      if (p2.trials < 1) throw UsageError("--trials must be >= 1");
      const auto fb = build_factor_base(p2.k);
      log(common, err, "experiment-prop2 p=" + std::to_string(p2.p) + " k=" + std::to_string(p2.k) +
                           " r=" + std::to_string(p2.r) + " trials=" + std::to_string(p2.trials) +
                           " model=" + p2_model);
      ExperimentReport report;
      try {
        report = sample_event_Ek1(p2, fb, workers);
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
      if (common.format == "json") {
        primary << to_json(report).dump(2) << '\n';
      } else if (common.format == "csv") {
        primary << experiment_csv_header() << '\n' << experiment_csv_row(report) << '\n';
      } else {
        primary << std::setprecision(6) << "model=" << to_string(report.params.model)
                << " p=" << p2.p << " k=" << p2.k << " r=" << p2.r << " trials=" << p2.trials
                << " seed=" << p2.seed << '\n'
                << "frequency=" << report.empirical_frequency << " +/- " << report.standard_error
                << " bound=" << report.analytic_bound << " correction=" << report.correction
                << " threshold=" << report.threshold << '\n'
                << "verdict=" << to_string(report.verdict) << '\n';
      }
      code = report.verdict == Verdict::Exceeds ? kNegative : kSuccess;
    } else if (*profile) {
      const OrderModel model = parse_order_model(prof_model);
      if (prof_k < 1) throw UsageError("--k must be >= 1");
      if (prof_samples < 1) throw UsageError("--trials must be >= 1");
      const auto fb = build_factor_base(prof_k);
      SmoothnessProfile prof;
      try {
        prof = smoothness_profile(prof_p, fb, prof_samples, resolve_seed(common.seed_text), model, workers);
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
      if (common.format == "json") {
        primary << to_json(prof).dump(2) << '\n';
      } else if (common.format == "csv") {
        primary << profile_csv_header() << '\n' << profile_csv_rows(prof);
      } else {
        primary << std::setprecision(6) << "p=" << prof.p << " model=" << to_string(prof.model)
                << " samples=" << prof.samples << " smooth_fraction=" << prof.smooth_fraction << '\n';
        primary << "prime  frequency  expected  within\n";
        for (const auto& row : prof.rows)
          primary << row.prime << "  " << row.frequency << "  " << row.expected << "  "
                  << (row.within ? "yes" : "no") << '\n';
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (common.out_path.empty()) {
    out << primary.str();
  } else {
    std::ofstream file(common.out_path, std::ios::binary);
    if (!file) {
      err << "usage error: cannot open --out " << common.out_path << '\n';
      return kUsage;
    }
    file << primary.str();
  }
  return code;
}

}  // namespace factorlab::cli
