#include "ratcond/system_matrix.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include "ratcond/errors.hpp"

namespace ratcond {

namespace {

// Fixed probe points for the regularity check: pseudo-random on an
// annulus around the unit circle, the same at every call.
const Complex kProbePoints[5] = {
    {0.9134736352, 0.3728191264},  {-0.4617233529, 1.0912036829},
    {0.1093842275, -0.8144692387}, {-1.2039475162, -0.2938471027},
    {0.6571038462, 0.7321946810},
};

}  // namespace

PolySystemMatrix::PolySystemMatrix(PolyMatrix A, PolyMatrix B, PolyMatrix C,
                                   PolyMatrix D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
  const Eigen::Index n = A_.rows();
  const Eigen::Index p = D_.rows();
  if (A_.cols() != n) throw ShapeMismatch("A block must be square");
  if (D_.cols() != p) throw ShapeMismatch("D block must be square");
  if (B_.rows() != n || B_.cols() != p) {
    throw ShapeMismatch("B block must be n x p");
  }
  if (C_.rows() != p || C_.cols() != n) {
    throw ShapeMismatch("C block must be p x n");
  }
  const double scale = A_.max_coeff_norm();
  if (scale == 0.0) throw NotRegular("A block is identically zero");
  const double tol = static_cast<double>(n) * kEps * scale;
  bool regular = false;
  for (const Complex& z : kProbePoints) {
    if (smallest_singular_value(A_.eval(z)) > tol) {
      regular = true;
      break;
    }
  }
  if (!regular) {
    throw NotRegular("det A(lambda) vanished at all probe points");
  }
}

PolyMatrix PolySystemMatrix::assemble() const {
  const Eigen::Index n = this->n();
  const Eigen::Index p = this->p();
  int count = std::max(std::max(A_.coeff_count(), B_.coeff_count()),
                       std::max(C_.coeff_count(), D_.coeff_count()));
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Matrix block = Matrix::Zero(n + p, n + p);
    block.topLeftCorner(n, n) = -A_.coeff_or_zero(i);
    block.topRightCorner(n, p) = B_.coeff_or_zero(i);
    block.bottomLeftCorner(p, n) = C_.coeff_or_zero(i);
    block.bottomRightCorner(p, p) = D_.coeff_or_zero(i);
    out.push_back(std::move(block));
  }
  if (out.empty()) return PolyMatrix(n + p, n + p);
  return PolyMatrix(std::move(out)).trimmed();
}

double PolySystemMatrix::default_tol() const {
  double norm = std::max(A_.max_coeff_norm(),
                         std::max(B_.max_coeff_norm(), C_.max_coeff_norm()));
  return static_cast<double>(n() + p()) * kEps * norm;
}

Matrix PolySystemMatrix::transfer_eval(Complex z, double tol) const {
  if (tol < 0.0) tol = default_tol();
  Matrix Az = A_.eval(z);
  if (smallest_singular_value(Az) <= tol) {
    throw PoleOrSingular("A(z) is numerically singular at the given point");
  }
  Eigen::PartialPivLU<Matrix> lu(Az);
  return D_.eval(z) + C_.eval(z) * lu.solve(B_.eval(z));
}

MinimalityReport PolySystemMatrix::minimality_at(Complex z, double tol) const {
  if (tol < 0.0) tol = default_tol();
  const Eigen::Index n = this->n();
  const Eigen::Index p = this->p();

  Matrix col_stack(n + p, n);
  col_stack.topRows(n) = -A_.eval(z);
  col_stack.bottomRows(p) = C_.eval(z);

  Matrix row_stack(n, n + p);
  row_stack.leftCols(n) = A_.eval(z);
  row_stack.rightCols(p) = B_.eval(z);

  MinimalityReport report;
  report.tol = tol;
  report.sigma_col = smallest_singular_value(col_stack);
  report.sigma_row = smallest_singular_value(row_stack);
  report.minimal = report.sigma_col > tol && report.sigma_row > tol;
  return report;
}

}  // namespace ratcond
