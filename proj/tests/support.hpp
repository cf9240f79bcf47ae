#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ratcond/eigensolve.hpp"
#include "ratcond/errors.hpp"
#include "ratcond/models.hpp"
#include "ratcond/rng.hpp"
#include "ratcond/system_matrix.hpp"

namespace ratcond::testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Naive monomial-sum evaluation, the independent oracle for Horner.
inline Matrix naive_eval(const PolyMatrix& P, Complex z) {
  Matrix acc = Matrix::Zero(P.rows(), P.cols());
  Complex power = 1.0;
  for (int i = 0; i < P.coeff_count(); ++i) {
    acc += power * P.coeff(i);
    power *= z;
  }
  return acc;
}

// Central finite difference (P(z+h)-P(z-h))/(2h) along the real axis.
inline Matrix fd_derivative(const PolyMatrix& P, Complex z, double h = 1e-6) {
  return (P.eval(z + h) - P.eval(z - h)) / (2.0 * h);
}

// Angular grid search for the sharp per-degree cap: the maximum of
// ||[[a,b],[c,d]] u||_2 over unit real vectors u.
inline double grid_search_cap(double a, double b, double c, double d,
                              int points = 10000) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    double theta = 2.0 * M_PI * i / points;
    double u = std::cos(theta);
    double w = std::sin(theta);
    double row1 = a * u + b * w;
    double row2 = c * u + d * w;
    best = std::max(best, std::sqrt(row1 * row1 + row2 * row2));
  }
  return best;
}

// Seeded random polynomial system matrix: sizes n, p in 1..max_size,
// block degrees up to max_degree with deg A >= 1, and B and/or C
// occasionally stored as empty zero blocks.
inline PolySystemMatrix random_psm(std::uint64_t seed, int max_size = 6,
                                   int max_degree = 3) {
  NormalStream stream(seed);
  std::mt19937_64 int_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(int_rng() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  };
  int n = pick(1, max_size);
  int p = pick(1, max_size);
  int deg_a = pick(1, max_degree);
  int deg_b = pick(-1, max_degree);  // -1 encodes an empty zero block
  int deg_c = pick(-1, max_degree);
  int deg_d = pick(0, max_degree);

  auto random_block = [&](int deg, Eigen::Index rows, Eigen::Index cols) {
    if (deg < 0) return PolyMatrix(rows, cols);
    std::vector<Matrix> coeffs;
    for (int i = 0; i <= deg; ++i) {
      coeffs.push_back(stream.complex_gaussian(rows, cols));
    }
    return PolyMatrix(std::move(coeffs));
  };

  return PolySystemMatrix(random_block(deg_a, n, n), random_block(deg_b, n, p),
                          random_block(deg_c, p, n),
                          random_block(deg_d, p, p));
}

struct RandomInstance {
  PolySystemMatrix S;
  SimpleZero sz;
};

// One usable random instance, or nullopt when the draw fails the
// minimal/simple gates (or the well-conditioned-A gate when
// require_nonpole is set).
inline std::optional<RandomInstance> try_random_instance(
    std::uint64_t seed, bool require_nonpole = false) {
  try {
    PolySystemMatrix S = random_psm(seed);
    SimpleZero sz = largest_zero(S);
    if (!sz.minimality.minimal || !sz.simple) return std::nullopt;
    if (require_nonpole) {
      Matrix Az = S.A().eval(sz.lambda0);
      double smax = spectral_norm(Az);
      if (smax <= 1e-3) return std::nullopt;
      if (smallest_singular_value(Az) < 0.05 * smax) return std::nullopt;
    }
    return RandomInstance{std::move(S), std::move(sz)};
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Exactly `count` accepted instances, walking seeds from seed0.
inline std::vector<RandomInstance> random_instances(
    int count, std::uint64_t seed0, bool require_nonpole = false) {
  std::vector<RandomInstance> out;
  std::uint64_t seed = seed0;
  while (static_cast<int>(out.size()) < count) {
    if (auto instance = try_random_instance(seed, require_nonpole)) {
      out.push_back(std::move(*instance));
    }
    ++seed;
  }
  return out;
}

}  // namespace ratcond::testing
