// Command-line front end: problem ingestion, condition-number analysis,
// first-order validation, and the two stock experiments, with CSV output
// and a JSON metadata sidecar next to every file written.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratcond/errors.hpp"
#include "ratcond/experiments.hpp"
#include "ratcond/json_io.hpp"
#include "ratcond/models.hpp"
#include "ratcond/perturb.hpp"

namespace {

using namespace ratcond;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitGeneric = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotMinimal = 3;
constexpr int kExitNotSimple = 4;
constexpr int kExitPoleOrSingular = 5;
constexpr int kExitEigensolver = 6;

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const NotMinimal*>(&e)) return kExitNotMinimal;
  if (dynamic_cast<const NotSimple*>(&e)) return kExitNotSimple;
  if (dynamic_cast<const PoleOrSingular*>(&e)) return kExitPoleOrSingular;
  if (dynamic_cast<const BackendFailure*>(&e)) return kExitEigensolver;
  if (dynamic_cast<const NoFiniteEigenvalues*>(&e)) return kExitEigensolver;
  return kExitGeneric;
}

struct TargetSpec {
  enum Kind { kLargest, kNearest, kAll } kind = kLargest;
  Complex point{};
};

struct CliOptions {
  std::string config_path;
  std::string input_path;
  std::string model;
  double alpha = 2.0;
  double beta = 3.0;
  double k = 1.0;
  int n = 10;
  double m = 1.0;
  std::string weights_mode = "uniform";
  std::string weights_file;
  std::vector<double> eps_list{1e-6, 1e-7, 1e-8};
  std::uint64_t seed = 0;
  std::string out_path;
  std::string target = "largest";
  bool scaled = false;
  std::string rep = "rep1";   // experiment 1
  int realizations = 100;     // experiment 1
  std::vector<double> k_grid; // experiment 2
};

TargetSpec parse_target(const std::string& text) {
  TargetSpec spec;
  if (text == "largest") {
    spec.kind = TargetSpec::kLargest;
  } else if (text == "all") {
    spec.kind = TargetSpec::kAll;
  } else if (text.rfind("nearest=", 0) == 0) {
    std::string rest = text.substr(8);
    size_t comma = rest.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected --target nearest=RE,IM");
    }
    try {
      spec.point = Complex(std::stod(rest.substr(0, comma)),
                           std::stod(rest.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParseError("could not parse the nearest target point");
    }
    spec.kind = TargetSpec::kNearest;
  } else {
    throw ParseError("unknown --target (use largest, nearest=RE,IM or all)");
  }
  return spec;
}

void validate_eps_list(const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw ParseError("--eps needs at least one value");
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) {
      throw ParseError("--eps entries must be positive");
    }
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw ParseError("--eps entries must be strictly decreasing");
    }
  }
}

ModelSpec model_spec_from(const CliOptions& opt) {
  ModelSpec spec;
  spec.name = model_name_from_string(opt.model);
  spec.n = opt.n;
  spec.k = opt.k;
  spec.m = opt.m;
  spec.alpha = opt.alpha;
  spec.beta = opt.beta;
  spec.seed = opt.seed;
  return spec;
}

PolySystemMatrix build_problem(const CliOptions& opt) {
  if (!opt.input_path.empty()) return load_system_matrix(opt.input_path);
  if (opt.model.empty()) {
    throw ParseError("provide either --input or --model");
  }
  return build(model_spec_from(opt));
}

WeightScheme resolve_weights(const CliOptions& opt,
                             const PolySystemMatrix& S) {
  if (opt.weights_mode == "uniform") return weight_scheme_uniform(S);
  if (opt.weights_mode == "relative") return weight_scheme_relative(S);
  if (opt.weights_mode == "data_only") {
    if (opt.model.empty()) {
      throw ParseError("--weights data_only needs a --model");
    }
    return data_only_weights(model_spec_from(opt));
  }
  if (opt.weights_mode == "custom") {
    if (opt.weights_file.empty()) {
      throw ParseError("--weights custom needs --weights-file");
    }
    return load_weight_scheme(opt.weights_file);
  }
  throw ParseError("unknown --weights mode: " + opt.weights_mode);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// Every CSV gets a sidecar recording the inputs that produced it.
void write_sidecar(const std::string& out_path, const CliOptions& opt,
                   const char* command, json extra = json::object()) {
  json meta{{"command", command},
            {"seed", opt.seed},
            {"weights_mode", opt.weights_mode},
            {"target", opt.target},
            {"scaled", opt.scaled},
            {"eps_list", opt.eps_list},
            {"defaults",
             {{"eigenvalue_magnitude_cutoff", 6.7e7},
              {"residual_gate", 1e-8},
              {"minimality_tol_rule", "(n+p) * eps * max block coeff norm"}}}};
  if (!opt.input_path.empty()) meta["input"] = opt.input_path;
  if (!opt.model.empty()) {
    meta["model"] = opt.model;
    meta["params"] = {{"n", opt.n},     {"k", opt.k},       {"m", opt.m},
                      {"alpha", opt.alpha}, {"beta", opt.beta}};
  }
  meta.update(extra);
  write_text(out_path + ".meta.json", meta.dump(2) + "\n");
}

std::vector<SimpleZero> select_targets(const PolySystemMatrix& S,
                                       const TargetSpec& target) {
  switch (target.kind) {
    case TargetSpec::kLargest:
      return {largest_zero(S)};
    case TargetSpec::kNearest:
      return {nearest_zero(S, target.point)};
    case TargetSpec::kAll: {
      std::vector<SimpleZero> all = eigenpairs(S);
      std::sort(all.begin(), all.end(),
                [](const SimpleZero& a, const SimpleZero& b) {
                  if (a.lambda0.real() != b.lambda0.real()) {
                    return a.lambda0.real() < b.lambda0.real();
                  }
                  return a.lambda0.imag() < b.lambda0.imag();
                });
      return all;
    }
  }
  throw Error("unreachable target kind");
}

int cmd_analyze(const CliOptions& opt) {
  PolySystemMatrix S = build_problem(opt);
  WeightScheme weights = resolve_weights(opt, S);
  TargetSpec target = parse_target(opt.target);
  std::vector<SimpleZero> zeros = select_targets(S, target);

  std::string csv = condition_report_csv_header(opt.scaled) + "\n";
  int rows = 0;
  std::optional<int> first_failure;
  for (const SimpleZero& sz : zeros) {
    try {
      ConditionReport report = analyze(S, sz, weights);
      csv += condition_report_csv_row(report, opt.scaled) + "\n";
      if (report.marginal_minimality) {
        std::cerr << "warning: minimality is marginal at lambda0="
                  << sz.lambda0 << " (sigma_col=" << sz.minimality.sigma_col
                  << ", sigma_row=" << sz.minimality.sigma_row
                  << ", tol=" << sz.minimality.tol << ")\n";
      }
      ++rows;
    } catch (const Error& e) {
      std::cerr << "skipping lambda0=" << sz.lambda0 << ": " << e.what()
                << "\n";
      if (!first_failure) first_failure = exit_code_for(e);
    }
  }
  if (rows == 0) {
    std::cerr << "error: no analyzable eigenvalue in the selection\n";
    return first_failure.value_or(kExitEigensolver);
  }
  if (!opt.out_path.empty()) {
    write_text(opt.out_path, csv);
    write_sidecar(opt.out_path, opt, "analyze", {{"rows", rows}});
  } else {
    std::cout << csv;
  }
  return kExitOk;
}

int cmd_validate(const CliOptions& opt) {
  validate_eps_list(opt.eps_list);
  PolySystemMatrix S = build_problem(opt);
  WeightScheme weights = resolve_weights(opt, S);
  TargetSpec target = parse_target(opt.target);
  SimpleZero sz = target.kind == TargetSpec::kNearest
                      ? nearest_zero(S, target.point)
                      : largest_zero(S);
  ValidationSummary summary =
      first_order_validate(S, sz, weights, opt.eps_list);

  std::string csv = trial_csv_header() + "\n";
  for (const TrialResult& trial : summary.trials) {
    csv += trial_csv_row(trial) + "\n";
  }
  json summary_json{{"kappa_S", summary.kappa_s},
                    {"max_rel_error", summary.max_rel_error},
                    {"lambda0", {sz.lambda0.real(), sz.lambda0.imag()}}};
  if (!opt.out_path.empty()) {
    write_text(opt.out_path, csv);
    write_text(opt.out_path + ".summary.json", summary_json.dump(2) + "\n");
    write_sidecar(opt.out_path, opt, "validate");
  } else {
    std::cout << csv << summary_json.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_experiment1(const CliOptions& opt) {
  ModelName rep = opt.rep == "rep3" ? ModelName::kDampedVibrationRep3
                                    : ModelName::kDampedVibrationRep1;
  auto rows =
      run_experiment1(rep, opt.n, static_cast<int>(opt.k), opt.realizations,
                      opt.seed);
  std::string csv =
      "realization,seed,lambda0_re,lambda0_im,kappa_S_uniform,"
      "kappa_U_uniform,ratio_uniform,kappa_S_data_only,kappa_U_data_only,"
      "ratio_data_only\n";
  double max_ratio_uniform = 0.0;
  for (const Experiment1Row& row : rows) {
    csv += std::to_string(row.realization) + "," + std::to_string(row.seed) +
           "," + format_double(row.lambda0.real()) + "," +
           format_double(row.lambda0.imag()) + "," +
           format_double(row.kappa_S_uniform) + "," +
           format_double(row.kappa_U_uniform) + "," +
           format_double(row.ratio_uniform) + "," +
           format_double(row.kappa_S_data) + "," +
           format_double(row.kappa_U_data) + "," +
           format_double(row.ratio_data) + "\n";
    max_ratio_uniform = std::max(max_ratio_uniform, row.ratio_uniform);
  }
  if (!opt.out_path.empty()) {
    write_text(opt.out_path, csv);
    write_sidecar(opt.out_path, opt, "experiment1",
                  {{"rep", opt.rep},
                   {"realizations", opt.realizations},
                   {"max_ratio_uniform", max_ratio_uniform}});
  } else {
    std::cout << csv;
  }
  return kExitOk;
}

int cmd_experiment2(const CliOptions& opt) {
  std::vector<double> grid = opt.k_grid;
  if (grid.empty()) {
    for (int e = 0; e <= 6; ++e) grid.push_back(std::pow(10.0, e));
  }
  auto rows = run_experiment2(opt.n, opt.m, grid);
  std::string csv = "rep,k,lambda0_re,lambda0_im,kappa_S,kappa_U,ratio\n";
  for (const Experiment2Row& row : rows) {
    csv += to_string(row.rep) + "," + format_double(row.k) + "," +
           format_double(row.lambda0.real()) + "," +
           format_double(row.lambda0.imag()) + "," +
           format_double(row.kappa_S) + "," + format_double(row.kappa_U) +
           "," + format_double(row.ratio) + "\n";
  }

  auto slope_of = [&](ModelName rep, bool structured) {
    std::vector<double> xs, ys;
    for (const Experiment2Row& row : rows) {
      if (row.rep != rep) continue;
      xs.push_back(row.k);
      ys.push_back(structured ? row.kappa_S : row.kappa_U);
    }
    return loglog_slope(xs, ys);
  };
  json slopes{
      {"rep2_kappa_S", slope_of(ModelName::kLoadedStringRep2, true)},
      {"rep2_kappa_U", slope_of(ModelName::kLoadedStringRep2, false)},
      {"rep4_kappa_S", slope_of(ModelName::kLoadedStringRep4, true)},
      {"rep4_kappa_U", slope_of(ModelName::kLoadedStringRep4, false)}};
  if (!opt.out_path.empty()) {
    write_text(opt.out_path, csv);
    write_sidecar(opt.out_path, opt, "experiment2", {{"slopes", slopes}});
  } else {
    std::cout << csv << slopes.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_example52(const CliOptions& opt) {
  CliOptions local = opt;
  local.model = "example52";
  if (local.k < 1.0) local.k = 2.0;
  PolySystemMatrix S = build(model_spec_from(local));
  SimpleZero sz = nearest_zero(S, local.alpha);

  int k = static_cast<int>(local.k);
  WeightScheme weights{std::vector<double>(static_cast<size_t>(k) + 1, 1.0),
                       {1.0},
                       {1.0, 1.0},
                       {0.0}};
  ConditionReport report = analyze(S, sz, weights);

  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  double sum = 0.0;
  double power = 1.0;
  for (int i = 0; i <= k; ++i) {
    double p_i = i == 0 ? phi : (i == 1 ? std::sqrt(2.0) : 1.0);
    sum += p_i * power;
    power *= std::abs(local.alpha);
  }
  double kappa_s_closed = std::abs(local.alpha) + 1.0;
  double kappa_u_closed =
      sum * std::sqrt(1.0 + std::pow(std::abs(local.alpha), 2.0 * k) +
                      local.beta * local.beta);

  json out{{"alpha", local.alpha},
           {"beta", local.beta},
           {"k", k},
           {"lambda0", {sz.lambda0.real(), sz.lambda0.imag()}},
           {"kappa_S", report.kappa_S},
           {"kappa_S_closed_form", kappa_s_closed},
           {"kappa_U", report.kappa_U},
           {"kappa_U_closed_form", kappa_u_closed},
           {"ratio", report.ratio}};
  if (!opt.out_path.empty()) {
    std::string csv = condition_report_csv_header(opt.scaled) + "\n" +
                      condition_report_csv_row(report, opt.scaled) + "\n";
    write_text(opt.out_path, csv);
    write_sidecar(opt.out_path, local, "example52", {{"closed_forms", out}});
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// Fills flag values from a JSON config for every option the user did not
// pass explicitly; explicit flags win.
void merge_config(const CLI::App& cmd, CliOptions& opt) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw ParseError("cannot open config " + opt.config_path);
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON config: ") + e.what());
  }

  auto unset = [&](const std::string& flag) {
    const CLI::Option* option = cmd.get_option_no_throw(flag);
    return option != nullptr && option->count() == 0;
  };
  auto load = [&](const char* key, const std::string& flag, auto& field) {
    if (config.contains(key) && unset(flag)) {
      config.at(key).get_to(field);
    }
  };
  load("input", "--input", opt.input_path);
  load("model", "--model", opt.model);
  load("alpha", "--alpha", opt.alpha);
  load("beta", "--beta", opt.beta);
  load("k", "--k", opt.k);
  load("n", "--n", opt.n);
  load("m", "--m", opt.m);
  load("weights", "--weights", opt.weights_mode);
  load("weights_file", "--weights-file", opt.weights_file);
  load("eps", "--eps", opt.eps_list);
  load("seed", "--seed", opt.seed);
  load("out", "--out", opt.out_path);
  load("target", "--target", opt.target);
  load("scaled", "--scaled", opt.scaled);
  load("rep", "--rep", opt.rep);
  load("realizations", "--realizations", opt.realizations);
  load("k_grid", "--k-grid", opt.k_grid);
}

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path,
                  "JSON config file; explicit flags win on conflict");
  cmd->add_option("--input", opt.input_path,
                  "problem JSON file with blocks A, B, C, D");
  cmd->add_option("--model", opt.model, "built-in model name");
  cmd->add_option("--alpha", opt.alpha, "model parameter alpha");
  cmd->add_option("--beta", opt.beta, "model parameter beta");
  cmd->add_option("--k", opt.k, "model parameter k");
  cmd->add_option("--n", opt.n, "model size n");
  cmd->add_option("--m", opt.m, "model parameter m");
  cmd->add_option("--weights", opt.weights_mode,
                  "uniform | relative | data_only | custom");
  cmd->add_option("--weights-file", opt.weights_file,
                  "JSON weight scheme for --weights custom");
  cmd->add_option("--eps", opt.eps_list, "decreasing positive eps sweep")
      ->delimiter(',');
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--out", opt.out_path, "output CSV path");
  cmd->add_option("--target", opt.target,
                  "largest | nearest=RE,IM | all");
  cmd->add_flag("--scaled", opt.scaled, "also report kappa / |lambda0|");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Structured and unstructured eigenvalue condition numbers for "
      "polynomial system matrices"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "condition numbers at selected zeros");
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "first-order perturbation law with the extremal direction");
  CLI::App* exp1_cmd = app.add_subcommand(
      "experiment1", "damped-vibration condition-number ratios");
  CLI::App* exp2_cmd = app.add_subcommand(
      "experiment2", "loaded-string stiffness sweep for both realizations");
  CLI::App* ex52_cmd = app.add_subcommand(
      "example52", "worked parametric example against its closed forms");

  for (CLI::App* cmd :
       {analyze_cmd, validate_cmd, exp1_cmd, exp2_cmd, ex52_cmd}) {
    add_common_options(cmd, opt);
  }
  exp1_cmd->add_option("--rep", opt.rep, "rep1 | rep3");
  exp1_cmd->add_option("--realizations", opt.realizations,
                       "number of seeded draws");
  exp2_cmd->add_option("--k-grid", opt.k_grid, "stiffness grid")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    merge_config(*cmd, opt);
    validate_eps_list(opt.eps_list);
    if (cmd == analyze_cmd) return cmd_analyze(opt);
    if (cmd == validate_cmd) return cmd_validate(opt);
    if (cmd == exp1_cmd) return cmd_experiment1(opt);
    if (cmd == exp2_cmd) return cmd_experiment2(opt);
    if (cmd == ex52_cmd) return cmd_example52(opt);
    return kExitGeneric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneric;
  }
}
