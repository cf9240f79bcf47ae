#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ratcond/models.hpp"

namespace ratcond {

/// One damped-vibration realization: ratios at the largest-magnitude
/// finite eigenvalue under the two weight conventions of the experiment.
struct Experiment1Row {
  int realization = 0;
  std::uint64_t seed = 0;
  Complex lambda0{};
  double kappa_S_uniform = 0.0;
  double kappa_U_uniform = 0.0;
  double ratio_uniform = 0.0;
  double kappa_S_data = 0.0;
  double kappa_U_data = 0.0;
  double ratio_data = 0.0;
};

// Runs `realizations` seeded draws of the damped-vibration model (rep must
// be one of the two damped_vibration representations); realization i uses
// seed base_seed + i. Rows come back in realization order regardless of
// scheduling.
std::vector<Experiment1Row> run_experiment1(ModelName rep, int n, int k,
                                            int realizations,
                                            std::uint64_t base_seed);

/// Loaded-string condition numbers at one stiffness value.
struct Experiment2Row {
  ModelName rep = ModelName::kLoadedStringRep2;
  double k = 0.0;
  Complex lambda0{};
  double kappa_S = 0.0;
  double kappa_U = 0.0;
  double ratio = 0.0;
};

// Sweeps the stiffness grid for both loaded-string representations with
// uniform weights, at the largest-magnitude finite eigenvalue.
std::vector<Experiment2Row> run_experiment2(int n, double m,
                                            const std::vector<double>& k_grid);

// Least-squares slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Maps [0, count) over a small worker pool; fn(i) must be independent of
// order. Results land by index, so output is deterministic.
void parallel_for_index(int count, const std::function<void(int)>& fn);

}  // namespace ratcond
