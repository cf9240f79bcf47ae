#include "ratcond/poly_matrix.hpp"

#include <Eigen/SVD>

#include "ratcond/errors.hpp"

namespace ratcond {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

PolyMatrix::PolyMatrix(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw ShapeMismatch("PolyMatrix dimensions must be positive");
  }
}

PolyMatrix::PolyMatrix(std::vector<Matrix> coeffs)
    : rows_(0), cols_(0), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw ShapeMismatch("PolyMatrix coefficient list may not be empty; "
                        "use the shape constructor for the zero polynomial");
  }
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  if (rows_ <= 0 || cols_ <= 0) {
    throw ShapeMismatch("PolyMatrix dimensions must be positive");
  }
  for (const Matrix& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) {
      throw ShapeMismatch("PolyMatrix coefficients must share dimensions");
    }
  }
}

int PolyMatrix::degree() const {
  for (int i = coeff_count() - 1; i >= 0; --i) {
    if (!coeffs_[static_cast<size_t>(i)].isZero(0.0)) return i;
  }
  return kNegInf;
}

Matrix PolyMatrix::coeff_or_zero(int i) const {
  if (i >= 0 && i < coeff_count()) return coeffs_[static_cast<size_t>(i)];
  return Matrix::Zero(rows_, cols_);
}

Matrix PolyMatrix::eval(Complex z) const {
  Matrix acc = Matrix::Zero(rows_, cols_);
  for (int i = coeff_count() - 1; i >= 0; --i) {
    acc = acc * z + coeffs_[static_cast<size_t>(i)];
  }
  return acc;
}

Matrix PolyMatrix::eval_derivative(Complex z) const {
  Matrix acc = Matrix::Zero(rows_, cols_);
  for (int i = coeff_count() - 1; i >= 1; --i) {
    acc = acc * z + static_cast<double>(i) * coeffs_[static_cast<size_t>(i)];
  }
  return acc;
}

PolyMatrix PolyMatrix::trimmed() const {
  int d = degree();
  if (d == kNegInf) return PolyMatrix(rows_, cols_);
  std::vector<Matrix> out(coeffs_.begin(), coeffs_.begin() + (d + 1));
  return PolyMatrix(std::move(out));
}

double PolyMatrix::max_coeff_norm() const {
  double best = 0.0;
  for (const Matrix& c : coeffs_) best = std::max(best, spectral_norm(c));
  return best;
}

double PolyMatrix::coefficient_scale(Complex z) const {
  double base = std::max(1.0, std::abs(z));
  double scale = 0.0;
  double power = 1.0;
  for (const Matrix& c : coeffs_) {
    scale += spectral_norm(c) * power;
    power *= base;
  }
  return scale;
}

PolyMatrix PolyMatrix::axpy(Complex scalar, const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ShapeMismatch("PolyMatrix shapes differ in axpy");
  }
  int count = std::max(coeff_count(), other.coeff_count());
  if (count == 0) return PolyMatrix(rows_, cols_);
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(coeff_or_zero(i) + scalar * other.coeff_or_zero(i));
  }
  return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  return axpy(Complex(1.0, 0.0), other);
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
  return axpy(Complex(-1.0, 0.0), other);
}

PolyMatrix PolyMatrix::operator*(Complex scalar) const {
  if (coeffs_.empty()) return *this;
  std::vector<Matrix> out;
  out.reserve(coeffs_.size());
  for (const Matrix& c : coeffs_) out.push_back(scalar * c);
  return PolyMatrix(std::move(out));
}

}  // namespace ratcond
