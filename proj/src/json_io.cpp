#include "ratcond/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "ratcond/errors.hpp"

namespace ratcond {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError("complex entry must be a [re, im] array");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParseError("coefficient matrix has the wrong row count");
  }
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("coefficient matrix has the wrong column count");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(i, c) = complex_from_json(row[static_cast<size_t>(c)]);
    }
  }
  return out;
}

std::vector<double> weight_list_from_json(const json& j, const char* name) {
  if (!j.is_array()) {
    throw ParseError(std::string("weight list ") + name + " must be an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& entry : j) {
    if (!entry.is_number()) {
      throw ParseError(std::string("weight list ") + name +
                       " must hold numbers");
    }
    double value = entry.get<double>();
    if (value < 0.0) {
      throw ParseError(std::string("weight list ") + name +
                       " must be nonnegative");
    }
    out.push_back(value);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

json poly_matrix_to_json(const PolyMatrix& P) {
  json coeffs = json::array();
  for (const Matrix& c : P.coeffs()) coeffs.push_back(matrix_to_json(c));
  return json{{"rows", P.rows()}, {"cols", P.cols()}, {"coeffs", coeffs}};
}

PolyMatrix poly_matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("coeffs")) {
    throw ParseError("PolyMatrix needs rows, cols and coeffs fields");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw ParseError("PolyMatrix rows/cols must be integers");
  }
  Eigen::Index rows = j["rows"].get<Eigen::Index>();
  Eigen::Index cols = j["cols"].get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) {
    throw ParseError("PolyMatrix rows/cols must be positive");
  }
  const json& coeffs = j["coeffs"];
  if (!coeffs.is_array()) throw ParseError("coeffs must be an array");
  if (coeffs.empty()) return PolyMatrix(rows, cols);
  std::vector<Matrix> out;
  out.reserve(coeffs.size());
  for (const json& c : coeffs) out.push_back(matrix_from_json(c, rows, cols));
  return PolyMatrix(std::move(out));
}

json system_matrix_to_json(const PolySystemMatrix& S) {
  return json{{"A", poly_matrix_to_json(S.A())},
              {"B", poly_matrix_to_json(S.B())},
              {"C", poly_matrix_to_json(S.C())},
              {"D", poly_matrix_to_json(S.D())}};
}

PolySystemMatrix system_matrix_from_json(const json& j) {
  for (const char* key : {"A", "B", "C", "D"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("system matrix needs block ") + key);
    }
  }
  try {
    return PolySystemMatrix(
        poly_matrix_from_json(j["A"]), poly_matrix_from_json(j["B"]),
        poly_matrix_from_json(j["C"]), poly_matrix_from_json(j["D"]));
  } catch (const ShapeMismatch& e) {
    throw ParseError(std::string("inconsistent block shapes: ") + e.what());
  }
}

PolySystemMatrix load_system_matrix(const std::string& path) {
  return system_matrix_from_json(read_json_file(path));
}

json weight_scheme_to_json(const WeightScheme& w) {
  return json{{"a", w.a}, {"b", w.b}, {"c", w.c}, {"d", w.d}};
}

WeightScheme weight_scheme_from_json(const json& j) {
  for (const char* key : {"a", "b", "c", "d"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("weight scheme needs list ") + key);
    }
  }
  return WeightScheme{
      weight_list_from_json(j["a"], "a"), weight_list_from_json(j["b"], "b"),
      weight_list_from_json(j["c"], "c"), weight_list_from_json(j["d"], "d")};
}

WeightScheme load_weight_scheme(const std::string& path) {
  return weight_scheme_from_json(read_json_file(path));
}

json condition_report_to_json(const ConditionReport& report) {
  return json{{"lambda0", complex_to_json(report.lambda0)},
              {"kappa_S", report.kappa_S},
              {"kappa_U", report.kappa_U},
              {"p", report.p},
              {"K", report.K},
              {"S_at_lambda0",
               {{report.S_at_lambda0(0, 0), report.S_at_lambda0(0, 1)},
                {report.S_at_lambda0(1, 0), report.S_at_lambda0(1, 1)}}},
              {"ratio", report.ratio},
              {"scaled_kappa_S", report.scaled_kappa_S},
              {"scaled_kappa_U", report.scaled_kappa_U},
              {"scaled_is_unscaled", report.scaled_is_unscaled},
              {"marginal_minimality", report.marginal_minimality}};
}

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

std::string condition_report_csv_header(bool scaled) {
  std::string header = "lambda0_re,lambda0_im,kappa_S,kappa_U,ratio,K";
  if (scaled) header += ",scaled_kappa_S,scaled_kappa_U";
  return header;
}

std::string condition_report_csv_row(const ConditionReport& report,
                                     bool scaled) {
  std::string row = format_double(report.lambda0.real()) + "," +
                    format_double(report.lambda0.imag()) + "," +
                    format_double(report.kappa_S) + "," +
                    format_double(report.kappa_U) + "," +
                    format_double(report.ratio) + "," +
                    format_double(report.K);
  if (scaled) {
    row += "," + format_double(report.scaled_kappa_S) + "," +
           format_double(report.scaled_kappa_U);
  }
  return row;
}

std::string trial_csv_header() {
  return "eps,delta_lambda_abs,predicted,ratio_measured";
}

std::string trial_csv_row(const TrialResult& trial) {
  return format_double(trial.epsilon) + "," +
         format_double(trial.delta_lambda_abs) + "," +
         format_double(trial.predicted) + "," +
         format_double(trial.ratio_measured);
}

}  // namespace ratcond
