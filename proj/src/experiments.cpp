#include "ratcond/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ratcond/errors.hpp"

namespace ratcond {

void parallel_for_index(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<Experiment1Row> run_experiment1(ModelName rep, int n, int k,
                                            int realizations,
                                            std::uint64_t base_seed) {
  if (rep != ModelName::kDampedVibrationRep1 &&
      rep != ModelName::kDampedVibrationRep3) {
    throw InvalidSpec("experiment 1 runs the damped_vibration models");
  }
  if (realizations < 1) throw InvalidSpec("need at least one realization");

  std::vector<Experiment1Row> rows(static_cast<size_t>(realizations));
  parallel_for_index(realizations, [&](int i) {
    ModelSpec spec;
    spec.name = rep;
    spec.n = n;
    spec.k = k;
    spec.seed = base_seed + static_cast<std::uint64_t>(i);
    PolySystemMatrix S = build(spec);
    SimpleZero sz = largest_zero(S);

    ConditionReport uniform = analyze(S, sz, weight_scheme_uniform(S));
    ConditionReport data = analyze(S, sz, data_only_weights(spec));

    Experiment1Row& row = rows[static_cast<size_t>(i)];
    row.realization = i;
    row.seed = spec.seed;
    row.lambda0 = sz.lambda0;
    row.kappa_S_uniform = uniform.kappa_S;
    row.kappa_U_uniform = uniform.kappa_U;
    row.ratio_uniform = uniform.ratio;
    row.kappa_S_data = data.kappa_S;
    row.kappa_U_data = data.kappa_U;
    row.ratio_data = data.ratio;
  });
  return rows;
}

std::vector<Experiment2Row> run_experiment2(int n, double m,
                                            const std::vector<double>& k_grid) {
  const ModelName reps[2] = {ModelName::kLoadedStringRep2,
                             ModelName::kLoadedStringRep4};
  int count = static_cast<int>(k_grid.size()) * 2;
  std::vector<Experiment2Row> rows(static_cast<size_t>(count));
  parallel_for_index(count, [&](int idx) {
    int rep_index = idx / static_cast<int>(k_grid.size());
    int k_index = idx % static_cast<int>(k_grid.size());
    ModelSpec spec;
    spec.name = reps[rep_index];
    spec.n = n;
    spec.m = m;
    spec.k = k_grid[static_cast<size_t>(k_index)];
    PolySystemMatrix S = build(spec);
    SimpleZero sz = largest_zero(S);
    ConditionReport report = analyze(S, sz, weight_scheme_uniform(S));

    Experiment2Row& row = rows[static_cast<size_t>(idx)];
    row.rep = spec.name;
    row.k = spec.k;
    row.lambda0 = sz.lambda0;
    row.kappa_S = report.kappa_S;
    row.kappa_U = report.kappa_U;
    row.ratio = report.ratio;
  });
  return rows;
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidSpec("slope needs two equal-length samples at least");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double count = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double lx = std::log10(x[i]);
    double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace ratcond
