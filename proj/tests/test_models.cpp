#include <doctest.h>

#include <cmath>

#include "ratcond/condition.hpp"
#include "ratcond/errors.hpp"
#include "ratcond/models.hpp"
#include "support.hpp"

using namespace ratcond;
using namespace ratcond::testing;

TEST_CASE("the pole-zero model is minimal at 1 with the known eigenvector") {
  PolySystemMatrix S = build(ModelSpec{ModelName::kExample29Psm});
  CHECK(S.n() == 1);
  CHECK(S.p() == 2);
  CHECK(S.minimality_at(1.0).minimal);
  SimpleZero sz = nearest_zero(S, 1.0);
  Vector reference(3);
  reference << -1, 0, -1;
  reference.normalize();
  CHECK(std::abs(reference.dot(sz.v)) > 1.0 - 1e-10);
  // Alias for the same displayed realization.
  PolySystemMatrix alias = build(ModelSpec{ModelName::kExample24Psm});
  CHECK((alias.assemble().coeff(0) - S.assemble().coeff(0)).norm() == 0.0);
}

TEST_CASE("the parametric model has identity input and zero feedthrough") {
  ModelSpec spec;
  spec.name = ModelName::kExample52;
  spec.alpha = 2.0;
  spec.beta = 3.0;
  spec.k = 3;
  PolySystemMatrix S = build(spec);
  CHECK(S.B().coeff_count() == 1);
  CHECK((S.B().coeff(0) - Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK(S.D().coeff_count() == 1);
  CHECK(S.D().coeff(0).isZero(0.0));
  CHECK(S.A().degree() == 3);

  // The transfer function vanishes at alpha when beta != alpha^k.
  Matrix R = S.transfer_eval(spec.alpha);
  CHECK(smallest_singular_value(R) / spectral_norm(R) <= 1e-10);
}

TEST_CASE("loaded-string realizations share the transfer function") {
  ModelSpec rep2;
  rep2.name = ModelName::kLoadedStringRep2;
  rep2.n = 8;
  rep2.k = 5.0;
  rep2.m = 2.0;
  ModelSpec rep4 = rep2;
  rep4.name = ModelName::kLoadedStringRep4;
  PolySystemMatrix S2 = build(rep2);
  PolySystemMatrix S4 = build(rep4);
  NormalStream stream(17);
  for (int trial = 0; trial < 4; ++trial) {
    Complex z(stream.next(), stream.next());
    Matrix R2 = S2.transfer_eval(z);
    Matrix R4 = S4.transfer_eval(z);
    CHECK((R2 - R4).norm() <= 1e-12 * R2.norm());
  }
}

TEST_CASE("the loaded-string A block has its root at the pole") {
  ModelSpec spec;
  spec.name = ModelName::kLoadedStringRep2;
  spec.n = 6;
  spec.k = 3.0;
  spec.m = 2.0;
  PolySystemMatrix S = build(spec);
  CHECK(std::abs(S.A().eval(spec.k / spec.m)(0, 0)) <= 1e-15);
}

TEST_CASE("damped-vibration realizations share the transfer function") {
  ModelSpec rep1;
  rep1.name = ModelName::kDampedVibrationRep1;
  rep1.n = 4;
  rep1.k = 2;
  rep1.seed = 11;
  ModelSpec rep3 = rep1;
  rep3.name = ModelName::kDampedVibrationRep3;
  PolySystemMatrix S1 = build(rep1);
  PolySystemMatrix S3 = build(rep3);
  NormalStream stream(18);
  for (int trial = 0; trial < 4; ++trial) {
    Complex z(stream.next(), stream.next());
    Matrix R1 = S1.transfer_eval(z);
    Matrix R3 = S3.transfer_eval(z);
    CHECK((R1 - R3).norm() <= 1e-10 * R1.norm());
  }
}

TEST_CASE("damped-vibration draws are seed-deterministic") {
  ModelSpec spec;
  spec.name = ModelName::kDampedVibrationRep1;
  spec.n = 3;
  spec.k = 2;
  spec.seed = 5;
  PolySystemMatrix a = build(spec);
  PolySystemMatrix b = build(spec);
  CHECK((a.D().coeff(0) - b.D().coeff(0)).norm() == 0.0);
  spec.seed = 6;
  PolySystemMatrix c = build(spec);
  CHECK((a.D().coeff(0) - c.D().coeff(0)).norm() > 0.0);
}

TEST_CASE("data-only weights match the experiment configuration") {
  ModelSpec rep1;
  rep1.name = ModelName::kDampedVibrationRep1;
  WeightScheme w1 = data_only_weights(rep1);
  CHECK(w1.a == std::vector<double>{1.0, 0.0});
  CHECK(w1.b == std::vector<double>{0.0, 1.0});
  CHECK(w1.c == std::vector<double>{0.0, 0.0});
  CHECK(w1.d == std::vector<double>{1.0, 1.0});

  ModelSpec rep3;
  rep3.name = ModelName::kDampedVibrationRep3;
  WeightScheme w3 = data_only_weights(rep3);
  CHECK(w3.a == std::vector<double>{1.0, 0.0});
  CHECK(w3.b == std::vector<double>{1.0});
  CHECK(w3.c == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(w3.d == std::vector<double>{1.0, 1.0});

  std::vector<double> p3 = p_from_weights(w3);
  REQUIRE(p3.size() == 3);
  CHECK(rel_err(p3[0], (1.0 + std::sqrt(5.0)) / 2.0) <= 1e-14);
  CHECK(rel_err(p3[1], 1.0) <= 1e-14);
  CHECK(p3[2] == 0.0);

  ModelSpec other;
  other.name = ModelName::kExample52;
  CHECK_THROWS_AS(data_only_weights(other), InvalidSpec);
}

TEST_CASE("model parameter validation") {
  ModelSpec bad;
  bad.name = ModelName::kExample52;
  bad.k = 2.5;  // must be an integer degree
  CHECK_THROWS_AS(build(bad), InvalidSpec);
  bad.k = 0.0;
  CHECK_THROWS_AS(build(bad), InvalidSpec);

  ModelSpec ls;
  ls.name = ModelName::kLoadedStringRep2;
  ls.k = -1.0;
  CHECK_THROWS_AS(build(ls), InvalidSpec);

  CHECK(model_name_from_string("loaded_string_rep4") ==
        ModelName::kLoadedStringRep4);
  CHECK_THROWS_AS(model_name_from_string("bogus"), InvalidSpec);
  CHECK(to_string(ModelName::kDampedVibrationRep3) == "damped_vibration_rep3");
}
