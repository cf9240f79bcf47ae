#pragma once

#include <vector>

#include "ratcond/eigensolve.hpp"
#include "ratcond/system_matrix.hpp"

namespace ratcond {

/// Per-degree nonnegative perturbation caps for the four blocks of a
/// polynomial system matrix. An empty list encodes a zero block (no
/// perturbation admitted there at any degree).
struct WeightScheme {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> d;

  // Highest degree covered by any list, or PolyMatrix::kNegInf when all
  // lists are empty.
  int max_degree() const;
};

// All weights 1 up to each block's structural degree.
WeightScheme weight_scheme_uniform(const PolySystemMatrix& S);

// Weights equal to the spectral norms of the stored coefficients.
WeightScheme weight_scheme_relative(const PolySystemMatrix& S);

// The 2x2 matrix S(z) of weighted absolute-value polynomials
// [sum a_i |z|^i, sum b_i |z|^i; sum c_i |z|^i, sum d_i |z|^i].
Eigen::Matrix2d S_matrix(const WeightScheme& weights, Complex z);

// Sharp unstructured caps: p_i is the largest singular value of
// [[a_i, b_i], [c_i, d_i]] (missing entries zero), the smallest
// per-degree caps whose unstructured perturbation set contains every
// structured one.
std::vector<double> p_from_weights(const WeightScheme& weights);

// Structured absolute condition number of the simple zero sz:
// (1/K) [||w1|| ||w2||] S(lambda0) [||v1||; ||v2||]. Valid also when
// lambda0 is a pole of R. Throws NotMinimal / NotSimple.
double kappa_S(const PolySystemMatrix& S, const SimpleZero& sz,
               const WeightScheme& weights);

// Unstructured (Tisseur) absolute condition number
// ||w|| ||v|| (sum p_i |lambda0|^i) / K. Throws NotSimple.
double kappa_U(const SimpleZero& sz, const std::vector<double>& p);

/// Bundled comparison of the two condition numbers at one zero.
struct ConditionReport {
  Complex lambda0{};
  double kappa_S = 0.0;
  double kappa_U = 0.0;
  std::vector<double> p;
  double K = 0.0;
  Eigen::Matrix2d S_at_lambda0 = Eigen::Matrix2d::Zero();
  double ratio = 0.0;  // kappa_U / kappa_S, +inf when kappa_S == 0
  double scaled_kappa_S = 0.0;  // divided by |lambda0|
  double scaled_kappa_U = 0.0;
  bool scaled_is_unscaled = false;  // lambda0 == 0: scaling skipped
  bool marginal_minimality = false;  // minimal, but within 10x of tol
};

ConditionReport analyze(const PolySystemMatrix& S, const SimpleZero& sz,
                        const WeightScheme& weights);

// Residual of the identity w^T P'(lambda0) v = y^T R'(lambda0) x in the
// non-pole case, with x = v2 and y = w2 as partitioned and R' from
// central finite differences of transfer_eval (h = 1e-6 max(1,|lambda0|)).
// Returns |lhs - rhs| / max(1, |lhs|). Throws PoleOrSingular when
// A(lambda0) is numerically singular. Test utility, not a production
// path.
double derivative_identity_residual(const PolySystemMatrix& S, const SimpleZero& sz);

namespace detail {
// Throws NotMinimal / NotSimple / InvalidSpec with diagnostics when sz is
// unusable for the condition-number formulas.
void require_minimal_simple(const SimpleZero& sz);
}  // namespace detail

}  // namespace ratcond
