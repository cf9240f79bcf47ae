#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ratcond/types.hpp"

namespace ratcond {

/// Standard normal stream over mt19937_64 with a hand-rolled Box-Muller,
/// so a seed reproduces bit-identical draws on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Entries with independent standard normal real and imaginary parts.
  Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        out(i, j) = Complex(next(), next());
      }
    }
    return out;
  }

  // Real standard normal entries stored as complex.
  Matrix real_gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        out(i, j) = Complex(next(), 0.0);
      }
    }
    return out;
  }

 private:
  double uniform() {
    return (static_cast<double>(rng_()) + 0.5) * 0x1.0p-64;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ratcond
