#include "factorlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace factorlab {

namespace {

/// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Json to_json(const ExperimentReport& r) {
  Json params{{"k", r.params.k},         {"r", r.params.r},
              {"p", r.params.p},         {"trials", r.params.trials},
              {"seed", r.params.seed},   {"model", to_string(r.params.model)}};
  return Json{{"params", params},
              {"next_prime", r.next_prime},
              {"hits", r.hits},
              {"empirical_frequency", r.empirical_frequency},
              {"standard_error", r.standard_error},
              {"analytic_bound", r.analytic_bound},
              {"correction", r.correction},
              {"small_corrections", r.small_corrections},
              {"threshold", r.threshold},
              {"verdict", to_string(r.verdict)},
              {"model_note", r.model_note}};
}

ExperimentReport experiment_report_from_json(const Json& doc) {
  ExperimentReport r;
  const auto& params = doc.at("params");
  r.params.k = params.at("k").get<std::size_t>();
  r.params.r = params.at("r").get<unsigned>();
  r.params.p = params.at("p").get<std::uint64_t>();
  r.params.trials = params.at("trials").get<std::size_t>();
  r.params.seed = params.at("seed").get<std::uint64_t>();
  r.params.model = parse_order_model(params.at("model").get<std::string>());
  r.next_prime = doc.at("next_prime").get<std::uint64_t>();
  r.hits = doc.at("hits").get<std::uint64_t>();
  r.empirical_frequency = doc.at("empirical_frequency").get<double>();
  r.standard_error = doc.at("standard_error").get<double>();
  r.analytic_bound = doc.at("analytic_bound").get<double>();
  r.correction = doc.at("correction").get<double>();
  r.small_corrections = doc.at("small_corrections").get<std::array<double, 3>>();
  r.threshold = doc.at("threshold").get<double>();
  r.verdict = parse_verdict(doc.at("verdict").get<std::string>());
  r.model_note = doc.at("model_note").get<std::string>();
  return r;
}

std::string experiment_csv_header() {
  return "k,r,p,trials,seed,model,next_prime,hits,empirical_frequency,standard_error,"
         "analytic_bound,correction,small_correction_1,small_correction_2,small_correction_3,"
         "threshold,verdict";
}

std::string experiment_csv_row(const ExperimentReport& r) {
  std::ostringstream os;
  os << r.params.k << ',' << r.params.r << ',' << r.params.p << ',' << r.params.trials << ','
     << r.params.seed << ',' << to_string(r.params.model) << ',' << r.next_prime << ',' << r.hits
     << ',' << fmt_double(r.empirical_frequency) << ',' << fmt_double(r.standard_error) << ','
     << fmt_double(r.analytic_bound) << ',' << fmt_double(r.correction);
  for (double c : r.small_corrections) os << ',' << fmt_double(c);
  os << ',' << fmt_double(r.threshold) << ',' << to_string(r.verdict);
  return os.str();
}

Json to_json(const Prop1Check& c) {
  return Json{{"lo", c.interval.lo.get_str()},
              {"hi", c.interval.hi.get_str()},
              {"z", c.z.get_str()},
              {"count", c.count.get_str()},
              {"frequency", to_string(c.frequency)},
              {"literal_frequency", to_string(c.literal_frequency)},
              {"tolerance", to_string(c.tolerance)},
              {"deviation", to_string(c.deviation)},
              {"literal_deviation", to_string(c.literal_deviation)},
              {"slack", to_string(c.slack)},
              {"slack_decimal", c.slack.get_d()},
              {"holds", c.holds}};
}

std::string prop1_csv_header() {
  return "lo,hi,z,count,frequency,literal_frequency,tolerance,deviation,literal_deviation,slack,holds";
}

std::string prop1_csv_row(const Prop1Check& c) {
  std::ostringstream os;
  os << c.interval.lo << ',' << c.interval.hi << ',' << c.z << ',' << c.count << ','
     << to_string(c.frequency) << ',' << to_string(c.literal_frequency) << ','
     << to_string(c.tolerance) << ',' << to_string(c.deviation) << ','
     << to_string(c.literal_deviation) << ',' << to_string(c.slack) << ','
     << (c.holds ? "true" : "false");
  return os.str();
}

Json to_json(const Prop2Bound& b) {
  return Json{{"k", b.k},
              {"r", b.r},
              {"p", b.p},
              {"next_prime", b.next_prime},
              {"approximate", b.approximate},
              {"bound", b.bound},
              {"correction", b.correction},
              {"small_corrections", b.small_corrections},
              {"vacuous", b.vacuous}};
}

Json to_json(const SmoothnessProfile& profile) {
  Json rows = Json::array();
  for (const auto& row : profile.rows) {
    rows.push_back(Json{{"prime", row.prime},
                        {"hits", row.hits},
                        {"frequency", row.frequency},
                        {"expected", row.expected},
                        {"allowance", row.allowance},
                        {"standard_error", row.standard_error},
                        {"within", row.within}});
  }
  return Json{{"p", profile.p},
              {"model", to_string(profile.model)},
              {"samples", profile.samples},
              {"smooth_count", profile.smooth_count},
              {"smooth_fraction", profile.smooth_fraction},
              {"rows", rows}};
}

std::string profile_csv_header() {
  return "p,model,samples,prime,hits,frequency,expected,allowance,standard_error,within";
}

std::string profile_csv_rows(const SmoothnessProfile& profile) {
  std::ostringstream os;
  for (const auto& row : profile.rows) {
    os << profile.p << ',' << to_string(profile.model) << ',' << profile.samples << ','
       << row.prime << ',' << row.hits << ',' << fmt_double(row.frequency) << ','
       << fmt_double(row.expected) << ',' << fmt_double(row.allowance) << ','
       << fmt_double(row.standard_error) << ',' << (row.within ? "true" : "false") << '\n';
  }
  return os.str();
}

Json to_json(const Factorization& f) {
  Json primes = Json::array();
  for (const auto& [p, e] : f.primes) primes.push_back(Json{{"prime", p.get_str()}, {"exponent", e}});
  Json rest = Json::array();
  for (const auto& [c, e] : f.unfactored)
    rest.push_back(Json{{"cofactor", c.get_str()}, {"exponent", e}});
  return Json{{"n", f.n.get_str()}, {"complete", f.complete()}, {"factors", primes},
              {"unfactored", rest}};
}

std::string format_factorization(const Factorization& f) {
  std::ostringstream os;
  os << f.n << " = ";
  bool first = true;
  auto emit = [&](const std::string& base, unsigned e) {
    if (!first) os << " × ";
    first = false;
    os << base;
    if (e > 1) os << '^' << e;
  };
  for (const auto& [p, e] : f.primes) emit(p.get_str(), e);
  // Unsplit composites are bracketed so they cannot be mistaken for primes.
  for (const auto& [c, e] : f.unfactored) emit("[" + c.get_str() + "]", e);
  return os.str();
}

Json to_json(const SieveDiagnostics& d) {
  return Json{{"samples", d.samples},
              {"relations", d.relations},
              {"bases_tried", d.bases_tried},
              {"dependencies_tried", d.dependencies_tried},
              {"trivial_dependencies", d.trivial_dependencies}};
}

}  // namespace factorlab
