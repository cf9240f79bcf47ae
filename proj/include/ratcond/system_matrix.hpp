#pragma once

#include "ratcond/poly_matrix.hpp"

namespace ratcond {

/// Local minimality diagnostics at a single point z: smallest singular
/// values of the stacked blocks [-A(z); C(z)] and [A(z) B(z)]. The raw
/// values are reported so callers can apply their own threshold.
struct MinimalityReport {
  double sigma_col = 0.0;
  double sigma_row = 0.0;
  double tol = 0.0;
  bool minimal = false;
};

/// A polynomial system matrix
///
///   P(lambda) = [ -A(lambda)  B(lambda) ]
///               [  C(lambda)  D(lambda) ]
///
/// with A regular of size n x n and square transfer function
/// R(lambda) = D + C A^{-1} B of size p x p. Blocks are stored unsigned;
/// assemble() applies the minus sign on A. Immutable after construction.
class PolySystemMatrix {
 public:
  // Validates block shapes and probes regularity of A at a few fixed
  // pseudo-random points (NotRegular if det A(lambda) looks identically
  // zero).
  PolySystemMatrix(PolyMatrix A, PolyMatrix B, PolyMatrix C, PolyMatrix D);

  Eigen::Index n() const { return A_.rows(); }
  Eigen::Index p() const { return D_.rows(); }

  const PolyMatrix& A() const { return A_; }
  const PolyMatrix& B() const { return B_; }
  const PolyMatrix& C() const { return C_; }
  const PolyMatrix& D() const { return D_; }

  // The (n+p) x (n+p) matrix polynomial with coefficient i equal to
  // [-A_i B_i; C_i D_i], of degree max of the block degrees.
  PolyMatrix assemble() const;

  // R(z) = D(z) + C(z) A(z)^{-1} B(z) via a partial-pivoting linear
  // solve. Throws PoleOrSingular when the smallest singular value of A(z)
  // is at or below tol (tol < 0 selects default_tol()).
  Matrix transfer_eval(Complex z, double tol = -1.0) const;

  // Smallest singular values of [-A(z); C(z)] and [A(z) B(z)]; minimal
  // iff both exceed tol (tol < 0 selects default_tol()).
  MinimalityReport minimality_at(Complex z, double tol = -1.0) const;

  // (n+p) * eps * max coefficient norm over the tested blocks A, B, C.
  double default_tol() const;

 private:
  PolyMatrix A_, B_, C_, D_;
};

}  // namespace ratcond
