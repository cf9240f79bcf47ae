#pragma once

#include <limits>
#include <vector>

#include "ratcond/types.hpp"

namespace ratcond {

/// A dense matrix polynomial P(lambda) = sum_i P_i lambda^i over the
/// complex numbers, stored as the ordered list of coefficient matrices in
/// the monomial basis. Immutable after construction; safe to share across
/// threads.
///
/// The coefficient list is structural: trailing all-zero coefficients are
/// permitted and do not change eval/derivative results. The zero
/// polynomial (empty list, or all coefficients zero) has degree kNegInf.
class PolyMatrix {
 public:
  // Degree sentinel for the zero polynomial.
  static constexpr int kNegInf = std::numeric_limits<int>::min();

  // Zero polynomial of the given shape with an empty coefficient list.
  PolyMatrix(Eigen::Index rows, Eigen::Index cols);

  // Takes ownership of the coefficient list; all matrices must share the
  // same shape (ShapeMismatch otherwise) and the list may not be empty.
  explicit PolyMatrix(std::vector<Matrix> coeffs);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

  // Number of stored coefficients (structural degree + 1); 0 for an empty
  // zero polynomial.
  int coeff_count() const { return static_cast<int>(coeffs_.size()); }

  // Structural degree: coeff_count() - 1, or kNegInf when no coefficients
  // are stored. Trailing zero coefficients still count here; see degree().
  int structural_degree() const {
    return coeffs_.empty() ? kNegInf : coeff_count() - 1;
  }

  // Highest index with a nonzero coefficient; kNegInf for the zero
  // polynomial. Only literal zeros are ignored.
  int degree() const;

  // i-th coefficient; indices beyond the stored list give a zero matrix.
  Matrix coeff_or_zero(int i) const;

  const Matrix& coeff(int i) const { return coeffs_.at(static_cast<size_t>(i)); }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  bool is_zero() const { return degree() == kNegInf; }

  // P(z) by Horner's scheme.
  Matrix eval(Complex z) const;

  // P'(z) = sum_i i P_i z^(i-1).
  Matrix eval_derivative(Complex z) const;

  // Copy with trailing literally-zero coefficients removed.
  PolyMatrix trimmed() const;

  // Largest spectral norm among the stored coefficients (0 if none).
  double max_coeff_norm() const;

  // sum_i ||P_i||_2 max(1,|z|)^i, the natural residual scale at z.
  double coefficient_scale(Complex z) const;

  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  PolyMatrix operator*(Complex scalar) const;

  // this + scalar * other, coefficient lists padded as needed.
  PolyMatrix axpy(Complex scalar, const PolyMatrix& other) const;

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<Matrix> coeffs_;
};

}  // namespace ratcond
