#ifndef FACTORLAB_REPORT_HPP
#define FACTORLAB_REPORT_HPP

#include <string>

#include <json.hpp>

#include "factorlab/ecm.hpp"
#include "factorlab/probability.hpp"
#include "factorlab/relsieve.hpp"

namespace factorlab {

using Json = nlohmann::ordered_json;

Json to_json(const ExperimentReport& report);
/// Inverse of to_json; throws nlohmann::json::exception on missing fields.
ExperimentReport experiment_report_from_json(const Json& doc);

std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentReport& report);

Json to_json(const Prop1Check& check);
std::string prop1_csv_header();
std::string prop1_csv_row(const Prop1Check& check);

Json to_json(const Prop2Bound& bound);

Json to_json(const SmoothnessProfile& profile);
std::string profile_csv_header();
std::string profile_csv_rows(const SmoothnessProfile& profile);

Json to_json(const Factorization& f);
/// "N = p1^e1 × p2^e2 ...", ascending, exponents of 1 omitted.
std::string format_factorization(const Factorization& f);

Json to_json(const SieveDiagnostics& d);

std::string to_string(const Rational& q);

}  // namespace factorlab

#endif  // FACTORLAB_REPORT_HPP
