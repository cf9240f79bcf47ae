#pragma once

#include <string>

#include <json.hpp>

#include "ratcond/condition.hpp"
#include "ratcond/perturb.hpp"
#include "ratcond/system_matrix.hpp"

namespace ratcond {

// PolyMatrix <-> {"rows": r, "cols": c, "coeffs": [list of row-major
// matrices, each complex entry a 2-array [re, im]]}.
nlohmann::json poly_matrix_to_json(const PolyMatrix& P);
PolyMatrix poly_matrix_from_json(const nlohmann::json& j);

// PolySystemMatrix <-> {"A": PolyMatrix, "B": ..., "C": ..., "D": ...};
// the on-disk problem format consumed by the CLI.
nlohmann::json system_matrix_to_json(const PolySystemMatrix& S);
PolySystemMatrix system_matrix_from_json(const nlohmann::json& j);
PolySystemMatrix load_system_matrix(const std::string& path);

nlohmann::json weight_scheme_to_json(const WeightScheme& w);
WeightScheme weight_scheme_from_json(const nlohmann::json& j);
WeightScheme load_weight_scheme(const std::string& path);

nlohmann::json condition_report_to_json(const ConditionReport& report);

// CSV row form: lambda0_re, lambda0_im, kappa_S, kappa_U, ratio, K
// (+ scaled columns on request).
std::string condition_report_csv_header(bool scaled);
std::string condition_report_csv_row(const ConditionReport& report,
                                     bool scaled);

std::string trial_csv_header();
std::string trial_csv_row(const TrialResult& trial);

// Round-trip-exact decimal formatting for CSV cells.
std::string format_double(double value);

}  // namespace ratcond
