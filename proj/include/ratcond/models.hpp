#pragma once

#include <cstdint>
#include <string>

#include "ratcond/condition.hpp"
#include "ratcond/system_matrix.hpp"

namespace ratcond {

enum class ModelName {
  kDampedVibrationRep1,
  kDampedVibrationRep3,
  kLoadedStringRep2,
  kLoadedStringRep4,
  kExample52,
  kExample24Psm,
  kExample29Psm,
};

ModelName model_name_from_string(const std::string& name);
std::string to_string(ModelName name);

/// Parameters for the built-in problems. Fields are read per model:
///   damped_vibration_*   n (block size), k (term count, integer), seed
///   loaded_string_*      n (string length), k (stiffness, real > 0), m
///   example52            alpha, beta, k (degree, integer)
///   example24_psm/29_psm none
struct ModelSpec {
  ModelName name = ModelName::kExample52;
  int n = 10;
  double k = 1.0;
  double m = 1.0;
  double alpha = 2.0;
  double beta = 3.0;
  std::uint64_t seed = 0;
};

// Builds the realization exactly as displayed in the defining equation.
// Throws InvalidSpec for out-of-range parameters.
PolySystemMatrix build(const ModelSpec& spec);

// The perturb-only-the-actual-data weight vectors of the damped-vibration
// experiment; InvalidSpec for other models.
WeightScheme data_only_weights(const ModelSpec& spec);

}  // namespace ratcond
