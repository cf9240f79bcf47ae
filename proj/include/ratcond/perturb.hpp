#pragma once

#include <cstdint>
#include <vector>

#include "ratcond/condition.hpp"

namespace ratcond {

/// A blockwise perturbation direction with the same structural degrees as
/// the weight lists that produced it. Coefficient norms satisfy the
/// feasibility caps ||dX_i||_2 <= x_i; epsilon is applied at use.
struct StructuredPerturbation {
  PolyMatrix dA;
  PolyMatrix dB;
  PolyMatrix dC;
  PolyMatrix dD;
};

// The rank-1 blockwise perturbation attaining kappa_S to first order,
// with phase factor mu = conj(lambda0)/|lambda0| (mu = 0 when
// lambda0 = 0). Blocks touching a vanished eigenvector partition are
// zero. Throws NotMinimal / NotSimple.
StructuredPerturbation extremal_perturbation(const PolySystemMatrix& S,
                                             const SimpleZero& sz,
                                             const WeightScheme& weights);

// Random direction on the boundary of the feasible set: every coefficient
// is a complex Gaussian matrix rescaled to spectral norm exactly equal to
// its weight. Deterministic given the seed.
StructuredPerturbation random_perturbation(const PolySystemMatrix& S,
                                           const WeightScheme& weights,
                                           std::uint64_t seed);

// Blockwise S + eps * dP. Throws ShapeMismatch.
PolySystemMatrix apply(const PolySystemMatrix& S,
                       const StructuredPerturbation& dP, double eps);

/// One perturb-and-resolve measurement at a single epsilon.
struct TrialResult {
  double epsilon = 0.0;
  double delta_lambda_abs = 0.0;  // |hat(lambda0)(eps) - lambda0|
  double predicted = 0.0;         // eps * predicted_slope
  double ratio_measured = 0.0;    // delta_lambda_abs / eps
};

// Re-solves the perturbed problem and matches the eigenvalue nearest to
// sz.lambda0. Throws EigenvalueCollision when the measured shift exceeds
// half the gap to the next eigenvalue of the unperturbed P. Pass kappa_S
// as predicted_slope to fill the first-order prediction column.
TrialResult measure_shift(const PolySystemMatrix& S,
                          const StructuredPerturbation& dP,
                          const SimpleZero& sz, double eps,
                          double predicted_slope = 0.0);

/// Extremal-perturbation sweep over a list of epsilons.
struct ValidationSummary {
  double kappa_s = 0.0;
  std::vector<TrialResult> trials;
  // max over eps of |ratio_measured - kappa_S| / kappa_S (exact-match
  // convention when kappa_S = 0).
  double max_rel_error = 0.0;
};

ValidationSummary first_order_validate(const PolySystemMatrix& S,
                                       const SimpleZero& sz,
                                       const WeightScheme& weights,
                                       const std::vector<double>& eps_list);

}  // namespace ratcond
