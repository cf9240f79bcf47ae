#include "ratcond/condition.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ratcond/errors.hpp"

namespace ratcond {

namespace {

std::vector<double> block_weights(const PolyMatrix& block, bool relative) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(block.coeff_count()));
  for (int i = 0; i < block.coeff_count(); ++i) {
    out.push_back(relative ? spectral_norm(block.coeff(i)) : 1.0);
  }
  return out;
}

double weighted_abs_poly(const std::vector<double>& weights, double abs_z) {
  double acc = 0.0;
  for (size_t i = weights.size(); i-- > 0;) {
    acc = acc * abs_z + weights[i];
  }
  return acc;
}

double weight_at(const std::vector<double>& weights, size_t i) {
  return i < weights.size() ? weights[i] : 0.0;
}

}  // namespace

namespace detail {

void require_minimal_simple(const SimpleZero& sz) {
  if (!sz.partitioned) {
    throw InvalidSpec("SimpleZero was not built from a PolySystemMatrix");
  }
  if (!sz.minimality.minimal) {
    std::ostringstream msg;
    msg << "system matrix is not minimal at lambda0: sigma_col="
        << sz.minimality.sigma_col << " sigma_row=" << sz.minimality.sigma_row
        << " tol=" << sz.minimality.tol;
    throw NotMinimal(msg.str());
  }
  if (!sz.simple) {
    std::ostringstream msg;
    msg << "eigenvalue fails the simplicity proxy: K=" << sz.K
        << " (tol " << sz.k_tol << "), sigma2_gap=" << sz.sigma2_gap
        << " (tol " << sz.gap_tol << ")";
    throw NotSimple(msg.str());
  }
}

}  // namespace detail

int WeightScheme::max_degree() const {
  size_t len = std::max(std::max(a.size(), b.size()),
                        std::max(c.size(), d.size()));
  return len == 0 ? PolyMatrix::kNegInf : static_cast<int>(len) - 1;
}

WeightScheme weight_scheme_uniform(const PolySystemMatrix& S) {
  return WeightScheme{block_weights(S.A(), false), block_weights(S.B(), false),
                      block_weights(S.C(), false), block_weights(S.D(), false)};
}

WeightScheme weight_scheme_relative(const PolySystemMatrix& S) {
  return WeightScheme{block_weights(S.A(), true), block_weights(S.B(), true),
                      block_weights(S.C(), true), block_weights(S.D(), true)};
}

Eigen::Matrix2d S_matrix(const WeightScheme& weights, Complex z) {
  double abs_z = std::abs(z);
  Eigen::Matrix2d out;
  out << weighted_abs_poly(weights.a, abs_z),
      weighted_abs_poly(weights.b, abs_z),
      weighted_abs_poly(weights.c, abs_z),
      weighted_abs_poly(weights.d, abs_z);
  return out;
}

std::vector<double> p_from_weights(const WeightScheme& weights) {
  int max_deg = weights.max_degree();
  if (max_deg == PolyMatrix::kNegInf) return {};
  std::vector<double> p;
  p.reserve(static_cast<size_t>(max_deg) + 1);
  for (size_t i = 0; i <= static_cast<size_t>(max_deg); ++i) {
    double a = weight_at(weights.a, i);
    double b = weight_at(weights.b, i);
    double c = weight_at(weights.c, i);
    double d = weight_at(weights.d, i);
    // Largest singular value of [[a,b],[c,d]] in closed form.
    double t = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
    p.push_back(std::sqrt(0.5 * (t + disc)));
  }
  return p;
}

double kappa_S(const PolySystemMatrix& S, const SimpleZero& sz,
               const WeightScheme& weights) {
  detail::require_minimal_simple(sz);
  if (sz.v1.size() != S.n() || sz.v2.size() != S.p()) {
    throw ShapeMismatch("eigenvector partition does not match the blocks");
  }
  Eigen::Vector2d w_norms(sz.w1.norm(), sz.w2.norm());
  Eigen::Vector2d v_norms(sz.v1.norm(), sz.v2.norm());
  return w_norms.dot(S_matrix(weights, sz.lambda0) * v_norms) / sz.K;
}

double kappa_U(const SimpleZero& sz, const std::vector<double>& p) {
  if (!sz.simple) {
    std::ostringstream msg;
    msg << "eigenvalue fails the simplicity proxy: K=" << sz.K
        << " (tol " << sz.k_tol << "), sigma2_gap=" << sz.sigma2_gap
        << " (tol " << sz.gap_tol << ")";
    throw NotSimple(msg.str());
  }
  return sz.w.norm() * sz.v.norm() *
         weighted_abs_poly(p, std::abs(sz.lambda0)) / sz.K;
}

ConditionReport analyze(const PolySystemMatrix& S, const SimpleZero& sz,
                        const WeightScheme& weights) {
  ConditionReport report;
  report.lambda0 = sz.lambda0;
  report.kappa_S = kappa_S(S, sz, weights);
  report.p = p_from_weights(weights);
  report.kappa_U = kappa_U(sz, report.p);
  report.K = sz.K;
  report.S_at_lambda0 = S_matrix(weights, sz.lambda0);
  report.ratio = report.kappa_S > 0.0
                     ? report.kappa_U / report.kappa_S
                     : std::numeric_limits<double>::infinity();
  double mod = std::abs(sz.lambda0);
  if (mod == 0.0) {
    report.scaled_is_unscaled = true;
    report.scaled_kappa_S = report.kappa_S;
    report.scaled_kappa_U = report.kappa_U;
  } else {
    report.scaled_kappa_S = report.kappa_S / mod;
    report.scaled_kappa_U = report.kappa_U / mod;
  }
  report.marginal_minimality =
      sz.minimality.minimal &&
      (sz.minimality.sigma_col <= 10.0 * sz.minimality.tol ||
       sz.minimality.sigma_row <= 10.0 * sz.minimality.tol);
  return report;
}

double derivative_identity_residual(const PolySystemMatrix& S, const SimpleZero& sz) {
  if (!sz.partitioned) {
    throw InvalidSpec("SimpleZero was not built from a PolySystemMatrix");
  }
  Complex lambda0 = sz.lambda0;
  double h = 1e-6 * std::max(1.0, std::abs(lambda0));

  // transfer_eval raises PoleOrSingular when A(lambda0) is singular; the
  // evaluation itself is discarded.
  (void)S.transfer_eval(lambda0);

  Matrix r_plus = S.transfer_eval(lambda0 + h);
  Matrix r_minus = S.transfer_eval(lambda0 - h);
  Matrix r_prime = (r_plus - r_minus) / (2.0 * h);

  PolyMatrix P = S.assemble();
  Complex lhs = (sz.w.transpose() * P.eval_derivative(lambda0) * sz.v).value();
  Complex rhs = (sz.w2.transpose() * r_prime * sz.v2).value();
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace ratcond
