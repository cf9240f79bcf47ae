#include "ratcond/models.hpp"

#include <cmath>

#include "ratcond/errors.hpp"
#include "ratcond/rng.hpp"

namespace ratcond {

namespace {

int integer_param(double value, const char* what) {
  double rounded = std::round(value);
  if (!(value >= 1.0) || std::abs(value - rounded) > 0.0) {
    throw InvalidSpec(std::string(what) + " must be an integer >= 1");
  }
  return static_cast<int>(rounded);
}

// The example with a zero that is also a pole at lambda0 = 1:
//   P = [ lambda-1 | 1 0 ]
//       [    0     | 1 0 ]
//       [   -1     | 0 1 ]
PolySystemMatrix example29() {
  PolyMatrix A(std::vector<Matrix>{Matrix::Constant(1, 1, 1.0),
                                   Matrix::Constant(1, 1, -1.0)});
  Matrix B0(1, 2);
  B0 << 1.0, 0.0;
  Matrix C0(2, 1);
  C0 << 0.0, -1.0;
  PolyMatrix B(std::vector<Matrix>{B0});
  PolyMatrix C(std::vector<Matrix>{C0});
  PolyMatrix D(std::vector<Matrix>{Matrix::Identity(2, 2)});
  return PolySystemMatrix(std::move(A), std::move(B), std::move(C),
                          std::move(D));
}

// P(lambda; alpha, beta, k) with A = [[lambda^k, beta],[beta, lambda^k]],
// C = [[lambda-alpha, 0],[0, 1]], B = I2, D = 02.
PolySystemMatrix example52(double alpha, double beta, int k) {
  std::vector<Matrix> a_coeffs(static_cast<size_t>(k) + 1,
                               Matrix::Zero(2, 2));
  a_coeffs[0] << 0.0, beta, beta, 0.0;
  a_coeffs[static_cast<size_t>(k)] = Matrix::Identity(2, 2);

  Matrix C0(2, 2), C1(2, 2);
  C0 << -alpha, 0.0, 0.0, 1.0;
  C1 << 1.0, 0.0, 0.0, 0.0;

  return PolySystemMatrix(
      PolyMatrix(std::move(a_coeffs)),
      PolyMatrix(std::vector<Matrix>{Matrix::Identity(2, 2)}),
      PolyMatrix(std::vector<Matrix>{C0, C1}),
      PolyMatrix(std::vector<Matrix>{Matrix::Zero(2, 2)}));
}

// R(lambda) = -K + lambda M + sum_i lambda^2 C_i / (omega_i - lambda),
// realized with A = diag((omega_i - lambda) I). rep1 keeps one lambda
// factor on each side (B = lambda [C_1; ...], C = [lambda I ...]); rep3
// moves both onto C (B constant, C = [lambda^2 I ...]).
PolySystemMatrix damped_vibration(int n, int k, std::uint64_t seed,
                                  bool rep3) {
  NormalStream stream(seed);
  Matrix K = stream.real_gaussian(n, n);
  Matrix M = stream.real_gaussian(n, n);
  std::vector<Matrix> C_terms;
  C_terms.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) C_terms.push_back(stream.real_gaussian(n, n));
  std::vector<double> omega(static_cast<size_t>(k));
  for (double& w : omega) w = stream.next();

  const Eigen::Index na = static_cast<Eigen::Index>(n) * k;
  Matrix A0 = Matrix::Zero(na, na);
  for (int i = 0; i < k; ++i) {
    A0.block(i * n, i * n, n, n) =
        omega[static_cast<size_t>(i)] * Matrix::Identity(n, n);
  }
  PolyMatrix A(std::vector<Matrix>{A0, -Matrix::Identity(na, na)});

  Matrix B_stack(na, n);
  for (int i = 0; i < k; ++i) {
    B_stack.block(i * n, 0, n, n) = C_terms[static_cast<size_t>(i)];
  }
  Matrix C_row(n, na);
  for (int i = 0; i < k; ++i) {
    C_row.block(0, i * n, n, n) = Matrix::Identity(n, n);
  }

  PolyMatrix B = rep3 ? PolyMatrix(std::vector<Matrix>{B_stack})
                      : PolyMatrix(std::vector<Matrix>{Matrix::Zero(na, n),
                                                       B_stack});
  PolyMatrix C =
      rep3 ? PolyMatrix(std::vector<Matrix>{Matrix::Zero(n, na),
                                            Matrix::Zero(n, na), C_row})
           : PolyMatrix(std::vector<Matrix>{Matrix::Zero(n, na), C_row});
  PolyMatrix D(std::vector<Matrix>{-K, M});
  return PolySystemMatrix(std::move(A), std::move(B), std::move(C),
                          std::move(D));
}

// NLEVP loaded_string FEM matrices: with h = 1/n,
// A = (1/h) tridiag(-1,2,-1) except A(n,n) = 1/h, and
// B = (h/6) tridiag(1,4,1) except B(n,n) = h/3.
void loaded_string_matrices(int n, Matrix& A, Matrix& B) {
  double h = 1.0 / n;
  A = Matrix::Zero(n, n);
  B = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 2.0 / h;
    B(i, i) = 4.0 * h / 6.0;
    if (i + 1 < n) {
      A(i, i + 1) = A(i + 1, i) = -1.0 / h;
      B(i, i + 1) = B(i + 1, i) = h / 6.0;
    }
  }
  A(n - 1, n - 1) = 1.0 / h;
  B(n - 1, n - 1) = h / 3.0;
}

// R(lambda) = A - lambda B + k lambda / (lambda - k/m) e_n e_n^T.
// rep2 keeps the stiffness k on the input side (B = k e_n^T,
// C = lambda e_n); rep4 moves it to the output side (B = e_n^T,
// C = k lambda e_n).
PolySystemMatrix loaded_string(int n, double k, double m, bool rep4) {
  Matrix A_ls, B_ls;
  loaded_string_matrices(n, A_ls, B_ls);
  Vector en = Vector::Zero(n);
  en(n - 1) = 1.0;

  PolyMatrix A(std::vector<Matrix>{Matrix::Constant(1, 1, -k / m),
                                   Matrix::Constant(1, 1, 1.0)});
  Matrix B_row = (rep4 ? 1.0 : k) * en.transpose();
  Matrix C_col = (rep4 ? k : 1.0) * en;
  PolyMatrix B(std::vector<Matrix>{B_row});
  PolyMatrix C(std::vector<Matrix>{Matrix::Zero(n, 1), C_col});
  PolyMatrix D(std::vector<Matrix>{A_ls, -B_ls});
  return PolySystemMatrix(std::move(A), std::move(B), std::move(C),
                          std::move(D));
}

}  // namespace

ModelName model_name_from_string(const std::string& name) {
  if (name == "damped_vibration_rep1") return ModelName::kDampedVibrationRep1;
  if (name == "damped_vibration_rep3") return ModelName::kDampedVibrationRep3;
  if (name == "loaded_string_rep2") return ModelName::kLoadedStringRep2;
  if (name == "loaded_string_rep4") return ModelName::kLoadedStringRep4;
  if (name == "example52") return ModelName::kExample52;
  if (name == "example24_psm") return ModelName::kExample24Psm;
  if (name == "example29_psm") return ModelName::kExample29Psm;
  throw InvalidSpec("unknown model name: " + name);
}

std::string to_string(ModelName name) {
  switch (name) {
    case ModelName::kDampedVibrationRep1: return "damped_vibration_rep1";
    case ModelName::kDampedVibrationRep3: return "damped_vibration_rep3";
    case ModelName::kLoadedStringRep2: return "loaded_string_rep2";
    case ModelName::kLoadedStringRep4: return "loaded_string_rep4";
    case ModelName::kExample52: return "example52";
    case ModelName::kExample24Psm: return "example24_psm";
    case ModelName::kExample29Psm: return "example29_psm";
  }
  throw InvalidSpec("unknown model name enum");
}

PolySystemMatrix build(const ModelSpec& spec) {
  switch (spec.name) {
    case ModelName::kExample24Psm:
    case ModelName::kExample29Psm:
      // Example 2.4's rational matrix is realized by the same system
      // matrix displayed in Example 2.9.
      return example29();
    case ModelName::kExample52: {
      int k = integer_param(spec.k, "example52 k");
      if (spec.alpha == 0.0) {
        throw InvalidSpec("example52 needs alpha != 0");
      }
      return example52(spec.alpha, spec.beta, k);
    }
    case ModelName::kDampedVibrationRep1:
    case ModelName::kDampedVibrationRep3: {
      if (spec.n < 1) throw InvalidSpec("damped_vibration needs n >= 1");
      int k = integer_param(spec.k, "damped_vibration k");
      return damped_vibration(spec.n, k, spec.seed,
                              spec.name == ModelName::kDampedVibrationRep3);
    }
    case ModelName::kLoadedStringRep2:
    case ModelName::kLoadedStringRep4: {
      if (spec.n < 1) throw InvalidSpec("loaded_string needs n >= 1");
      if (!(spec.k > 0.0) || !(spec.m > 0.0)) {
        throw InvalidSpec("loaded_string needs k > 0 and m > 0");
      }
      return loaded_string(spec.n, spec.k, spec.m,
                           spec.name == ModelName::kLoadedStringRep4);
    }
  }
  throw InvalidSpec("unknown model name enum");
}

WeightScheme data_only_weights(const ModelSpec& spec) {
  switch (spec.name) {
    case ModelName::kDampedVibrationRep1:
      return WeightScheme{{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}};
    case ModelName::kDampedVibrationRep3:
      return WeightScheme{{1.0, 0.0}, {1.0}, {0.0, 0.0, 0.0}, {1.0, 1.0}};
    default:
      throw InvalidSpec(
          "data-only weights are defined for the damped_vibration models");
  }
}

}  // namespace ratcond
