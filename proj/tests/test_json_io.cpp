#include <doctest.h>

#include <algorithm>

#include "ratcond/errors.hpp"
#include "ratcond/json_io.hpp"
#include "ratcond/models.hpp"
#include "support.hpp"

using namespace ratcond;
using namespace ratcond::testing;

TEST_CASE("poly matrix JSON round trip is exact") {
  NormalStream stream(61);
  std::vector<Matrix> coeffs;
  for (int i = 0; i < 3; ++i) coeffs.push_back(stream.complex_gaussian(2, 3));
  PolyMatrix P(std::move(coeffs));
  nlohmann::json j = poly_matrix_to_json(P);
  // Serialize through text, as the CLI does.
  PolyMatrix back = poly_matrix_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.coeff_count() == P.coeff_count());
  for (int i = 0; i < P.coeff_count(); ++i) {
    CHECK((back.coeff(i) - P.coeff(i)).norm() == 0.0);
  }
}

TEST_CASE("the zero polynomial round trips through an empty coeff list") {
  PolyMatrix zero(3, 2);
  nlohmann::json j = poly_matrix_to_json(zero);
  CHECK(j["coeffs"].empty());
  PolyMatrix back = poly_matrix_from_json(j);
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 2);
  CHECK(back.coeff_count() == 0);
}

TEST_CASE("system matrix JSON round trip preserves the blocks") {
  PolySystemMatrix S = build(ModelSpec{ModelName::kExample29Psm});
  nlohmann::json j = system_matrix_to_json(S);
  PolySystemMatrix back =
      system_matrix_from_json(nlohmann::json::parse(j.dump()));
  CHECK((back.assemble().coeff(0) - S.assemble().coeff(0)).norm() == 0.0);
  CHECK((back.assemble().coeff(1) - S.assemble().coeff(1)).norm() == 0.0);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(poly_matrix_from_json(nlohmann::json{{"rows", 2}}),
                  ParseError);
  nlohmann::json bad_entry = {
      {"rows", 1}, {"cols", 1}, {"coeffs", {{{1.0}}}}};  // not a [re, im]
  CHECK_THROWS_AS(poly_matrix_from_json(bad_entry), ParseError);
  nlohmann::json missing_block = {{"A", poly_matrix_to_json(PolyMatrix(1, 1))}};
  CHECK_THROWS_AS(system_matrix_from_json(missing_block), ParseError);
}

TEST_CASE("weight scheme JSON rejects negative entries") {
  nlohmann::json empty_list = nlohmann::json::array();
  nlohmann::json j = {{"a", {1.0, -0.5}},
                      {"b", {1.0}},
                      {"c", empty_list},
                      {"d", empty_list}};
  CHECK_THROWS_AS(weight_scheme_from_json(j), ParseError);
  nlohmann::json good = {{"a", {1.0, 0.5}},
                         {"b", empty_list},
                         {"c", {2.0}},
                         {"d", empty_list}};
  WeightScheme w = weight_scheme_from_json(good);
  CHECK(w.a == std::vector<double>{1.0, 0.5});
  CHECK(w.b.empty());
}

TEST_CASE("condition report serializes every field") {
  PolySystemMatrix S = build(ModelSpec{ModelName::kExample52, 10, 2.0, 1.0,
                                       2.0, 3.0, 0});
  SimpleZero sz = nearest_zero(S, 2.0);
  ConditionReport report = analyze(S, sz, weight_scheme_uniform(S));
  nlohmann::json j = condition_report_to_json(report);
  for (const char* key :
       {"lambda0", "kappa_S", "kappa_U", "p", "K", "S_at_lambda0", "ratio",
        "scaled_kappa_S", "scaled_kappa_U", "scaled_is_unscaled",
        "marginal_minimality"}) {
    CHECK(j.contains(key));
  }
  std::string row = condition_report_csv_row(report, false);
  CHECK(std::count(row.begin(), row.end(), ',') == 5);
  CHECK(condition_report_csv_header(true).find("scaled_kappa_U") !=
        std::string::npos);
}
