#pragma once

#include <vector>

#include "ratcond/system_matrix.hpp"

namespace ratcond {

/// First companion linearization of a degree-d matrix polynomial:
/// the pencil lambda*M1 + M0 whose finite eigenvalues equal the finite
/// eigenvalues of P, with multiplicity.
struct CompanionPencil {
  Matrix M0;
  Matrix M1;
};

// Throws DegreeZero when deg P < 1 (trailing zero coefficients trimmed).
CompanionPencil companion_pencil(const PolyMatrix& P);

// All finite eigenvalues of the pencil lambda*M1 + M0. The pencil is
// reduced to a standard complex eigenproblem through a deterministic
// random Moebius substitution lambda = (a mu + b)/(c mu + d), so a
// singular M1 (infinite eigenvalues) is handled; infinite eigenvalues are
// discarded by a beta-component threshold and the magnitude cutoff
// 1/sqrt(eps). Throws BackendFailure when no substitution yields a
// usable solve.
std::vector<Complex> pencil_eigenvalues(const Matrix& M0, const Matrix& M1);

// Finite eigenvalues of P via the companion pencil, unrefined.
std::vector<Complex> finite_eigenvalues(const PolyMatrix& P);

/// A finite eigenvalue of P with eigenvectors and diagnostics.
///
/// v and w have unit 2-norm; the left eigenvector uses the transpose
/// convention w^T P(lambda0) = 0 (not conjugate transpose). When built
/// from a PolySystemMatrix, v1/w1 hold the first n entries and v2/w2 the
/// last p, and the minimality report at lambda0 is filled.
struct SimpleZero {
  Complex lambda0{};
  Vector v, w;
  Vector v1, v2, w1, w2;
  double K = 0.0;           // |w^T P'(lambda0) v|
  double sigma2_gap = 0.0;  // second-smallest singular value of P(lambda0)
  double residual = 0.0;    // smallest singular value of P(lambda0)
  double k_tol = 0.0;
  double gap_tol = 0.0;
  bool simple = false;
  bool partitioned = false;
  MinimalityReport minimality;
};

// Newton-refines seed_lambda on P and fills a SimpleZero from one SVD of
// P(lambda). The refinement is the SVD-based correction
// delta = -(w^T P v)/(w^T P' v); it is skipped when the denominator is
// negligible (multiple eigenvalue) or the step looks divergent.
SimpleZero solve_at(const PolyMatrix& P, Complex seed_lambda,
                    int refine_steps = 3);

// Same, plus eigenvector partition at n and the minimality report.
SimpleZero solve_at(const PolySystemMatrix& S, Complex seed_lambda,
                    int refine_steps = 3);

// All finite eigenvalues of P as refined candidates. Candidates whose
// refined residual exceeds 1e-8 times the coefficient scale (numerical
// garbage from the infinite part of the pencil) are dropped, and spurious
// duplicates of simple eigenvalues are merged; genuine multiple
// eigenvalues keep one candidate per copy. Throws NoFiniteEigenvalues.
std::vector<SimpleZero> eigenpairs(const PolyMatrix& P);
std::vector<SimpleZero> eigenpairs(const PolySystemMatrix& S);

// argmin over finite eigenvalues of |lambda_i - target|, ties broken by
// smallest index in backend order. Throws NoFiniteEigenvalues.
Complex nearest_eigenvalue(const PolyMatrix& P, Complex target);

// Refined zero nearest to target / of largest magnitude, walking the
// candidate list until one passes the residual gate.
SimpleZero nearest_zero(const PolySystemMatrix& S, Complex target);
SimpleZero largest_zero(const PolySystemMatrix& S);

}  // namespace ratcond
