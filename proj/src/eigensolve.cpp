#include "ratcond/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "ratcond/errors.hpp"

namespace ratcond {

namespace {

constexpr double kInfinityCutoff = 6.7e7;  // ~ 1/sqrt(eps)
constexpr double kResidualGate = 1e-8;

// sum_{i>=1} i ||P_i|| max(1,|z|)^(i-1), the natural scale of P'(z).
double derivative_scale(const PolyMatrix& P, Complex z) {
  double base = std::max(1.0, std::abs(z));
  double scale = 0.0;
  double power = 1.0;
  for (int i = 1; i < P.coeff_count(); ++i) {
    scale += static_cast<double>(i) * spectral_norm(P.coeff(i)) * power;
    power *= base;
  }
  return scale;
}

// One Moebius substitution candidate: lambda = (a mu + b)/(c mu + d).
struct Moebius {
  Complex a, b, c, d;
};

// Solves the pencil through one substitution. Returns false when the
// substitution is unusable (ill-conditioned W1 or solver failure); a true
// result with an empty list means the pencil genuinely has no finite
// eigenvalues.
bool eigenvalues_via(const Matrix& M0, const Matrix& M1, const Moebius& t,
                     std::vector<Complex>& finite) {
  Matrix W1 = t.a * M1 + t.c * M0;
  Matrix W0 = t.b * M1 + t.d * M0;

  Eigen::JacobiSVD<Matrix> svd(W1);
  const auto& sv = svd.singularValues();
  double smax = sv(0);
  double smin = sv(sv.size() - 1);
  if (smax <= 0.0 || smin <= 1e-10 * smax) return false;

  Matrix T = -Eigen::PartialPivLU<Matrix>(W1).solve(W0);
  Eigen::ComplexEigenSolver<Matrix> solver(T, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) return false;

  finite.clear();
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    Complex mu = solver.eigenvalues()(i);
    Complex alpha = t.a * mu + t.b;
    Complex beta = t.c * mu + t.d;
    // beta cancellation to machine level marks an infinite eigenvalue.
    double beta_scale = std::abs(t.c) * std::abs(mu) + std::abs(t.d);
    if (std::abs(beta) <= 100.0 * kEps * beta_scale) continue;
    Complex lambda = alpha / beta;
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
      continue;
    }
    if (std::abs(lambda) >= kInfinityCutoff) continue;
    finite.push_back(lambda);
  }
  return true;
}

}  // namespace

CompanionPencil companion_pencil(const PolyMatrix& P) {
  PolyMatrix trimmed = P.trimmed();
  int d = trimmed.degree();
  if (d == PolyMatrix::kNegInf || d < 1) {
    throw DegreeZero("companion pencil needs degree >= 1");
  }
  const Eigen::Index s = trimmed.rows();
  if (trimmed.cols() != s) {
    throw ShapeMismatch("companion pencil needs a square polynomial");
  }
  const Eigen::Index N = s * d;

  CompanionPencil pencil;
  pencil.M1 = Matrix::Identity(N, N);
  pencil.M1.topLeftCorner(s, s) = trimmed.coeff(d);
  pencil.M0 = Matrix::Zero(N, N);
  for (int j = 0; j < d; ++j) {
    pencil.M0.block(0, j * s, s, s) = trimmed.coeff(d - 1 - j);
  }
  for (int j = 0; j + 1 < d; ++j) {
    pencil.M0.block((j + 1) * s, j * s, s, s) = -Matrix::Identity(s, s);
  }
  return pencil;
}

std::vector<Complex> pencil_eigenvalues(const Matrix& M0, const Matrix& M1) {
  if (M0.rows() != M0.cols() || M1.rows() != M1.cols() ||
      M0.rows() != M1.rows()) {
    throw ShapeMismatch("pencil matrices must be square of equal size");
  }

  // Identity first: when M1 is well-conditioned (no infinite eigenvalues)
  // the substitution is exact and we are done.
  std::vector<Complex> lambdas;
  if (eigenvalues_via(M0, M1, Moebius{1.0, 0.0, 0.0, 1.0}, lambdas)) {
    return lambdas;
  }

  // Singular M1: the pencil has infinite eigenvalues, and rounding inside
  // any single substitution scatters them to large finite artifacts
  // (their backward error is at machine level, so no residual test can
  // reject them). Solve with two independent substitutions and keep only
  // eigenvalues that reproduce: genuine finite eigenvalues agree across
  // substitutions, the artifacts land elsewhere. The unitary draws use a
  // fixed seed so repeated calls are identical.
  std::mt19937_64 rng(0x72617463ULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<Complex>> solved;
  for (int attempt = 0; attempt < 12 && solved.size() < 2; ++attempt) {
    Eigen::Matrix2cd Z;
    for (int r = 0; r < 2; ++r) {
      for (int col = 0; col < 2; ++col) {
        Z(r, col) = Complex(unif(rng), unif(rng));
      }
    }
    Eigen::Matrix2cd Q =
        Eigen::HouseholderQR<Eigen::Matrix2cd>(Z).householderQ();
    Moebius t{Q(0, 0), Q(0, 1), Q(1, 0), Q(1, 1)};
    if (eigenvalues_via(M0, M1, t, lambdas)) {
      solved.push_back(lambdas);
    }
  }
  if (solved.size() < 2) {
    throw BackendFailure("no Moebius substitution produced a usable solve");
  }

  std::vector<Complex> confirmed;
  std::vector<bool> used(solved[1].size(), false);
  for (Complex lambda : solved[0]) {
    double tol = 1e-6 * (1.0 + std::abs(lambda));
    size_t best = solved[1].size();
    double best_dist = tol;
    for (size_t j = 0; j < solved[1].size(); ++j) {
      if (used[j]) continue;
      double dist = std::abs(solved[1][j] - lambda);
      if (dist <= best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best < solved[1].size()) {
      used[best] = true;
      confirmed.push_back(lambda);
    }
  }
  return confirmed;
}

std::vector<Complex> finite_eigenvalues(const PolyMatrix& P) {
  CompanionPencil pencil = companion_pencil(P);
  return pencil_eigenvalues(pencil.M0, pencil.M1);
}

SimpleZero solve_at(const PolyMatrix& P, Complex seed_lambda,
                    int refine_steps) {
  const Eigen::Index s = P.rows();
  Complex lambda = seed_lambda;

  Vector v, w;
  double sigma_min = 0.0, sigma2 = 0.0;
  auto svd_fill = [&](Complex z) {
    Eigen::JacobiSVD<Matrix> svd(P.eval(z),
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    sigma_min = sv(sv.size() - 1);
    sigma2 = sv.size() >= 2 ? sv(sv.size() - 2) : sigma_min;
    v = svd.matrixV().col(s - 1);
    // Conjugate so that w^T P(lambda) ~ 0 in the transpose convention.
    w = svd.matrixU().col(s - 1).conjugate();
  };

  for (int step = 0; step < refine_steps; ++step) {
    svd_fill(lambda);
    Complex num = (w.transpose() * P.eval(lambda) * v).value();
    Complex den = (w.transpose() * P.eval_derivative(lambda) * v).value();
    double den_floor = kEps * derivative_scale(P, lambda);
    if (std::abs(den) <= den_floor) break;
    Complex delta = -num / den;
    if (std::abs(delta) > 0.1 * (1.0 + std::abs(lambda))) break;
    lambda += delta;
    if (std::abs(delta) <= 10.0 * kEps * (1.0 + std::abs(lambda))) {
      break;
    }
  }
  svd_fill(lambda);

  SimpleZero z;
  z.lambda0 = lambda;
  z.v = v;
  z.w = w;
  z.residual = sigma_min;
  z.sigma2_gap = sigma2;
  z.K = std::abs((w.transpose() * P.eval_derivative(lambda) * v).value());
  z.k_tol = 10.0 * kEps * derivative_scale(P, lambda);
  z.gap_tol = static_cast<double>(s) * kEps * P.coefficient_scale(lambda);
  z.simple = z.K > z.k_tol && z.sigma2_gap > z.gap_tol;
  return z;
}

SimpleZero solve_at(const PolySystemMatrix& S, Complex seed_lambda,
                    int refine_steps) {
  SimpleZero z = solve_at(S.assemble(), seed_lambda, refine_steps);
  const Eigen::Index n = S.n();
  const Eigen::Index p = S.p();
  z.v1 = z.v.head(n);
  z.v2 = z.v.tail(p);
  z.w1 = z.w.head(n);
  z.w2 = z.w.tail(p);
  z.partitioned = true;
  z.minimality = S.minimality_at(z.lambda0);
  return z;
}

namespace {

template <typename Solver>
std::vector<SimpleZero> candidates_from(const PolyMatrix& P, Solver solve) {
  std::vector<Complex> raw = finite_eigenvalues(P);
  if (raw.empty()) {
    throw NoFiniteEigenvalues("the polynomial has no finite eigenvalues");
  }
  std::vector<SimpleZero> kept;
  for (Complex lambda : raw) {
    SimpleZero z = solve(lambda);
    if (z.residual > kResidualGate * P.coefficient_scale(z.lambda0)) continue;
    kept.push_back(std::move(z));
  }
  if (kept.empty()) {
    throw NoFiniteEigenvalues("no finite eigenvalue passed the residual gate");
  }

  // Merge spurious duplicates: refinement can pull leaked infinite
  // eigenvalues onto an existing simple eigenvalue. A cluster keeps as
  // many copies as P(lambda) has negligible singular values, so genuine
  // multiple eigenvalues are preserved.
  std::vector<SimpleZero> out;
  std::vector<bool> used(kept.size(), false);
  for (size_t i = 0; i < kept.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> cluster{i};
    for (size_t j = i + 1; j < kept.size(); ++j) {
      if (used[j]) continue;
      double near = 1e-8 * (1.0 + std::abs(kept[i].lambda0));
      if (std::abs(kept[j].lambda0 - kept[i].lambda0) <= near) {
        cluster.push_back(j);
      }
    }
    size_t multiplicity = 1;
    if (cluster.size() > 1) {
      Eigen::JacobiSVD<Matrix> svd(P.eval(kept[i].lambda0));
      const auto& sv = svd.singularValues();
      double gate = kResidualGate * P.coefficient_scale(kept[i].lambda0);
      multiplicity = 0;
      for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) <= gate) ++multiplicity;
      }
      multiplicity = std::max<size_t>(1, multiplicity);
    }
    for (size_t c = 0; c < cluster.size(); ++c) {
      if (c < multiplicity) {
        out.push_back(kept[cluster[c]]);
      }
      used[cluster[c]] = true;
    }
  }
  return out;
}

}  // namespace

std::vector<SimpleZero> eigenpairs(const PolyMatrix& P) {
  return candidates_from(P, [&](Complex lambda) { return solve_at(P, lambda); });
}

std::vector<SimpleZero> eigenpairs(const PolySystemMatrix& S) {
  PolyMatrix P = S.assemble();
  return candidates_from(P, [&](Complex lambda) { return solve_at(S, lambda); });
}

Complex nearest_eigenvalue(const PolyMatrix& P, Complex target) {
  std::vector<Complex> finite = finite_eigenvalues(P);
  if (finite.empty()) {
    throw NoFiniteEigenvalues("the polynomial has no finite eigenvalues");
  }
  size_t best = 0;
  double best_dist = std::abs(finite[0] - target);
  for (size_t i = 1; i < finite.size(); ++i) {
    double dist = std::abs(finite[i] - target);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return finite[best];
}

namespace {

// Walk raw eigenvalues in the given preference order, returning the first
// refined candidate that passes the residual gate. A candidate whose
// refinement moved far from its seed was numerical garbage from the
// infinite part of the pencil collapsing onto some other eigenvalue, and
// must not hijack the selection.
SimpleZero first_valid(const PolySystemMatrix& S,
                       std::vector<Complex> ordered) {
  PolyMatrix P = S.assemble();
  for (Complex lambda : ordered) {
    SimpleZero z = solve_at(S, lambda);
    if (std::abs(z.lambda0 - lambda) > 0.1 * (1.0 + std::abs(lambda))) {
      continue;
    }
    if (z.residual <= kResidualGate * P.coefficient_scale(z.lambda0)) {
      return z;
    }
  }
  throw NoFiniteEigenvalues("no finite eigenvalue passed the residual gate");
}

}  // namespace

SimpleZero nearest_zero(const PolySystemMatrix& S, Complex target) {
  std::vector<Complex> finite = finite_eigenvalues(S.assemble());
  if (finite.empty()) {
    throw NoFiniteEigenvalues("the system matrix has no finite eigenvalues");
  }
  std::stable_sort(finite.begin(), finite.end(),
                   [&](Complex x, Complex y) {
                     return std::abs(x - target) < std::abs(y - target);
                   });
  return first_valid(S, std::move(finite));
}

SimpleZero largest_zero(const PolySystemMatrix& S) {
  std::vector<Complex> finite = finite_eigenvalues(S.assemble());
  if (finite.empty()) {
    throw NoFiniteEigenvalues("the system matrix has no finite eigenvalues");
  }
  std::stable_sort(finite.begin(), finite.end(), [](Complex x, Complex y) {
    return std::abs(x) > std::abs(y);
  });
  return first_valid(S, std::move(finite));
}

}  // namespace ratcond
