#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ratcond {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kEps = 2.220446049250313e-16;

// Spectral norm (largest singular value). Intended for the small dense
// matrices this library works with.
double spectral_norm(const Matrix& m);

// Smallest singular value.
double smallest_singular_value(const Matrix& m);

}  // namespace ratcond
