#include "ratcond/perturb.hpp"

#include <cmath>
#include <limits>

#include "ratcond/errors.hpp"
#include "ratcond/rng.hpp"

namespace ratcond {

namespace {

constexpr double kVanished = 1e-290;

// Rank-1 unit-spectral-norm direction conj(u) conj(v)^T / (||u|| ||v||),
// or zero when either factor has vanished. The conjugation makes the
// transpose-convention contraction u^T (conj(u) conj(v)^T) v equal
// ||u|| ||v|| exactly, so the weighted bound is attained also for complex
// eigenvector data.
Matrix unit_outer(const Vector& u, const Vector& v) {
  double nu = u.norm();
  double nv = v.norm();
  if (nu < kVanished || nv < kVanished) {
    return Matrix::Zero(u.size(), v.size());
  }
  return (u.conjugate() * v.conjugate().transpose()) / (nu * nv);
}

PolyMatrix scaled_powers(const Matrix& direction,
                         const std::vector<double>& weights, Complex mu,
                         double sign, Eigen::Index rows, Eigen::Index cols) {
  if (weights.empty()) return PolyMatrix(rows, cols);
  std::vector<Matrix> coeffs;
  coeffs.reserve(weights.size());
  Complex mu_pow = 1.0;
  for (double weight : weights) {
    coeffs.push_back(sign * weight * mu_pow * direction);
    mu_pow *= mu;
  }
  return PolyMatrix(std::move(coeffs));
}

PolyMatrix random_block(NormalStream& stream, const std::vector<double>& weights,
                        Eigen::Index rows, Eigen::Index cols) {
  if (weights.empty()) return PolyMatrix(rows, cols);
  std::vector<Matrix> coeffs;
  coeffs.reserve(weights.size());
  for (double weight : weights) {
    Matrix g = stream.complex_gaussian(rows, cols);
    double norm = spectral_norm(g);
    if (weight == 0.0 || norm < kVanished) {
      coeffs.push_back(Matrix::Zero(rows, cols));
    } else {
      coeffs.push_back((weight / norm) * g);
    }
  }
  return PolyMatrix(std::move(coeffs));
}

}  // namespace

StructuredPerturbation extremal_perturbation(const PolySystemMatrix& S,
                                             const SimpleZero& sz,
                                             const WeightScheme& weights) {
  detail::require_minimal_simple(sz);
  const Eigen::Index n = S.n();
  const Eigen::Index p = S.p();
  Complex lambda0 = sz.lambda0;
  // A computed eigenvalue within its own error bound of the origin is
  // treated as zero, which kills the i >= 1 coefficients through mu.
  double lambda_noise = 10.0 * sz.residual +
                        100.0 * kEps * S.assemble().coefficient_scale(lambda0);
  double zero_floor = lambda_noise / std::max(sz.K, kVanished);
  Complex mu = std::abs(lambda0) <= zero_floor
                   ? Complex(0.0, 0.0)
                   : std::conj(lambda0) / std::abs(lambda0);

  return StructuredPerturbation{
      scaled_powers(unit_outer(sz.w1, sz.v1), weights.a, mu, -1.0, n, n),
      scaled_powers(unit_outer(sz.w1, sz.v2), weights.b, mu, 1.0, n, p),
      scaled_powers(unit_outer(sz.w2, sz.v1), weights.c, mu, 1.0, p, n),
      scaled_powers(unit_outer(sz.w2, sz.v2), weights.d, mu, 1.0, p, p),
  };
}

StructuredPerturbation random_perturbation(const PolySystemMatrix& S,
                                           const WeightScheme& weights,
                                           std::uint64_t seed) {
  NormalStream stream(seed);
  const Eigen::Index n = S.n();
  const Eigen::Index p = S.p();
  StructuredPerturbation out{
      random_block(stream, weights.a, n, n),
      random_block(stream, weights.b, n, p),
      random_block(stream, weights.c, p, n),
      random_block(stream, weights.d, p, p),
  };
  return out;
}

PolySystemMatrix apply(const PolySystemMatrix& S,
                       const StructuredPerturbation& dP, double eps) {
  return PolySystemMatrix(S.A().axpy(eps, dP.dA), S.B().axpy(eps, dP.dB),
                          S.C().axpy(eps, dP.dC), S.D().axpy(eps, dP.dD));
}

TrialResult measure_shift(const PolySystemMatrix& S,
                          const StructuredPerturbation& dP,
                          const SimpleZero& sz, double eps,
                          double predicted_slope) {
  TrialResult trial;
  trial.epsilon = eps;
  trial.predicted = eps * predicted_slope;
  if (eps == 0.0) return trial;

  PolySystemMatrix perturbed = apply(S, dP, eps);
  PolyMatrix P_hat = perturbed.assemble();
  Complex matched = nearest_eigenvalue(P_hat, sz.lambda0);
  SimpleZero refined = solve_at(P_hat, matched);
  double delta = std::abs(refined.lambda0 - sz.lambda0);

  // Half-gap guard against matching a different eigenvalue of P.
  double gap = std::numeric_limits<double>::infinity();
  for (Complex other : finite_eigenvalues(S.assemble())) {
    double dist = std::abs(other - sz.lambda0);
    if (dist > 1e-8 * (1.0 + std::abs(sz.lambda0))) {
      gap = std::min(gap, dist);
    }
  }
  if (delta >= 0.5 * gap) {
    throw EigenvalueCollision(
        "measured shift exceeds half the eigenvalue gap; reduce eps");
  }

  trial.delta_lambda_abs = delta;
  trial.ratio_measured = delta / eps;
  return trial;
}

ValidationSummary first_order_validate(const PolySystemMatrix& S,
                                       const SimpleZero& sz,
                                       const WeightScheme& weights,
                                       const std::vector<double>& eps_list) {
  ValidationSummary summary;
  summary.kappa_s = kappa_S(S, sz, weights);
  StructuredPerturbation dP = extremal_perturbation(S, sz, weights);
  for (double eps : eps_list) {
    if (eps <= 0.0) {
      throw InvalidSpec("eps values must be positive");
    }
    TrialResult trial = measure_shift(S, dP, sz, eps, summary.kappa_s);
    double err;
    if (summary.kappa_s > 0.0) {
      err = std::abs(trial.ratio_measured - summary.kappa_s) / summary.kappa_s;
    } else {
      err = trial.ratio_measured > 0.0
                ? std::numeric_limits<double>::infinity()
                : 0.0;
    }
    summary.max_rel_error = std::max(summary.max_rel_error, err);
    summary.trials.push_back(trial);
  }
  return summary;
}

}  // namespace ratcond
