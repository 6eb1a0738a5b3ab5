// Copyright 2026 The DPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dpsc: command-line front end.
//
//   dpsc sweep  --config sweep.json [--serial]
//   dpsc run    --algo {nonprivate|out|obj} --n --t0 --lambda --eps --delta
//               --seed [--data file]
//   dpsc bounds --kind {nonprivate|out|obj|out_closed|obj_closed|cost} ...
//   dpsc gen    --n --t0 --seed --out file
//
// Exit codes: 0 success, 2 configuration error, 3 IO error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dpsc/bounds.h"
#include "dpsc/datagen.h"
#include "dpsc/objective_perturbation.h"
#include "dpsc/output_perturbation.h"
#include "dpsc/ridge.h"
#include "dpsc/serialize.h"
#include "dpsc/sweep.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

json VectorJson(const dpsc::Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

struct SweepArgs {
  std::string config;
  bool serial = false;
};

int RunSweepCommand(const SweepArgs& args) {
  std::ifstream in(args.config);
  if (!in) throw dpsc::IoError("cannot open '" + args.config + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw dpsc::ConfigError("'" + args.config + "' is not valid JSON: " +
                            e.what());
  }
  const dpsc::SweepConfig config = dpsc::SweepConfigFromJson(doc);
  const dpsc::SweepResult result = dpsc::RunSweep(
      config, args.serial ? dpsc::Execution::kSerial
                          : dpsc::Execution::kParallel);
  if (config.output.empty()) {
    dpsc::WriteAggregateCsv(std::cout, result.aggregate);
  } else {
    dpsc::WriteSweepOutputs(config, result);
    std::cerr << "wrote " << result.records.size() << " records to "
              << config.output << " and " << result.aggregate.size()
              << " cells to " << config.aggregate_output << '\n';
  }
  return 0;
}

struct RunArgs {
  std::string algo = "nonprivate";
  int n = 10;
  int t0 = 10;
  int horizon = dpsc::kDefaultHorizon;
  double lambda = 10.0;
  double eps = 100.0;
  double eps_split = 0.5;
  double delta = 0.0;
  std::optional<double> c;
  std::uint64_t seed = 0;
  std::string data;
};

int RunRunCommand(const RunArgs& args) {
  std::optional<dpsc::Dataset> loaded;
  std::optional<dpsc::GeneratedDataset> generated;
  const dpsc::DonorPanel* panel = nullptr;
  const dpsc::TargetSeries* target = nullptr;
  if (!args.data.empty()) {
    loaded = dpsc::LoadDataset(args.data, args.t0);
    if (!loaded->target) {
      throw dpsc::ConfigError("dataset '" + args.data + "' has no target");
    }
    panel = &loaded->panel;
    target = &*loaded->target;
  } else {
    generated = dpsc::GenerateLinearPanel(args.n, args.t0,
                                          args.t0 + args.horizon, {},
                                          args.seed);
    panel = &generated->panel;
    target = &generated->target;
  }
  if (!(args.eps_split > 0.0 && args.eps_split < 1.0)) {
    throw dpsc::ConfigError("--eps-split must lie in (0, 1)");
  }

  const dpsc::Algorithm algo = dpsc::ParseAlgorithm(args.algo);
  const double eps1 = args.eps_split * args.eps;
  const double eps2 = args.eps - eps1;
  dpsc::Rng rng = dpsc::Rng::Derive(args.seed, {1});
  json out;
  out["algorithm"] = dpsc::ToString(algo);
  out["n"] = panel->num_donors();
  out["t0"] = panel->t0();
  out["T"] = panel->num_periods();
  out["lambda"] = args.lambda;
  dpsc::Vector prediction;
  try {
    if (algo == dpsc::Algorithm::kNonPrivate) {
      dpsc::ScPrediction p = dpsc::ScFitPredict(*panel, *target, args.lambda);
      out["coeffs"] = VectorJson(p.fit.coeffs);
      prediction = std::move(p.prediction);
    } else {
      dpsc::PrivateOutput p;
      if (algo == dpsc::Algorithm::kOutput) {
        p = dpsc::DpscOut(*panel, *target, {args.lambda, eps1, eps2, false},
                          rng);
      } else {
        dpsc::DpscObjConfig cfg;
        cfg.lambda = args.lambda;
        cfg.eps1 = eps1;
        cfg.eps2 = eps2;
        cfg.delta = args.delta;
        cfg.c = args.c;
        p = dpsc::DpscObj(*panel, *target, cfg, rng);
        out["c"] = cfg.c.value_or(
            dpsc::DefaultC(panel->num_donors(), panel->t0()));
        out["eps0"] = p.noise.eps0;
        out["delta_reg"] = p.noise.delta_reg;
        out["delta_reg_raw"] = p.noise.delta_reg_raw;
      }
      out["eps1"] = eps1;
      out["eps2"] = eps2;
      out["budget"] = {{"epsilon", p.budget.epsilon},
                       {"delta", p.budget.delta}};
      out["coeff_noise"] = {{"family", dpsc::ToString(p.noise.coeff_family)},
                            {"scale", p.noise.coeff_scale},
                            {"norm", p.noise.coeff_norm}};
      out["post_noise"] = {{"scale", p.noise.post_scale},
                           {"norm", p.noise.post_norm}};
      out["sensitivity_assumption_holds"] = p.sensitivity_assumption_holds;
      prediction = std::move(p.prediction);
    }
  } catch (const dpsc::RankDeficientError& e) {
    throw dpsc::ConfigError(e.what());
  }
  out["prediction"] = VectorJson(prediction);
  if (target->truth()) {
    out["rmse_post"] = dpsc::RmsePost(prediction, target->signal_post());
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct BoundsArgs {
  std::string kind = "out";
  dpsc::BoundInputs in;
  int horizon = dpsc::kDefaultHorizon;
  double eps = 100.0;
  double eps_split = 0.5;
};

int RunBoundsCommand(BoundsArgs args) {
  dpsc::BoundInputs in = args.in;
  in.T = in.t0 + args.horizon;
  in.eps1 = args.eps_split * args.eps;
  in.eps2 = args.eps - in.eps1;
  json out;
  out["kind"] = args.kind;
  if (args.kind == "nonprivate") {
    out["bound"] = dpsc::BoundNonPrivate(in);
  } else if (args.kind == "out") {
    out["bound"] = dpsc::BoundOutput(in);
  } else if (args.kind == "obj") {
    out["bound"] = dpsc::BoundObjective(in);
  } else if (args.kind == "out_closed" || args.kind == "obj_closed") {
    const dpsc::CorollaryBound b = args.kind == "out_closed"
                                       ? dpsc::BoundOutputClosedForm(in)
                                       : dpsc::BoundObjectiveClosedForm(in);
    out["bound"] = b.value;
    out["sample_size_ok"] = b.sample_size_ok;
  } else if (args.kind == "cost") {
    const dpsc::PrivacyCost cost =
        dpsc::PrivacyCostOut(in.n, args.eps, in.sigma2, in.psi);
    out["terms"] = cost.terms;
    out["bound"] = cost.total;
    out["in_regime"] = cost.in_regime;
  } else {
    throw dpsc::ConfigError("unknown bound kind '" + args.kind + "'");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct GenArgs {
  int n = 10;
  int t0 = 10;
  int horizon = dpsc::kDefaultHorizon;
  std::uint64_t seed = 0;
  bool donor_mean_target = false;
  std::string out;
};

int RunGenCommand(const GenArgs& args) {
  dpsc::LatentModelSpec spec;
  spec.target_is_donor_mean = args.donor_mean_target;
  dpsc::GeneratedDataset data = dpsc::GenerateLinearPanel(
      args.n, args.t0, args.t0 + args.horizon, spec, args.seed);
  json generator = {{"model", "linear"},
                    {"seed", args.seed},
                    {"target_theta", data.target_theta},
                    {"donor_theta", VectorJson(data.donor_theta)}};
  dpsc::Dataset dataset{std::move(data.panel), std::move(data.target),
                        std::move(generator)};
  if (args.out.empty()) {
    std::cout << dpsc::ToJson(dataset).dump(1) << '\n';
  } else {
    dpsc::SaveDataset(args.out, dataset);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private synthetic control"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo sweep");
  sweep->add_option("--config", sweep_args.config, "Sweep config JSON")
      ->required();
  sweep->add_flag("--serial", sweep_args.serial,
                  "Use the single-threaded reference loop");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Fit and predict once");
  run->add_option("--algo", run_args.algo)
      ->check(CLI::IsMember({"nonprivate", "out", "obj", "dpsc_out",
                             "dpsc_obj"}));
  run->add_option("--n", run_args.n);
  run->add_option("--t0", run_args.t0);
  run->add_option("--horizon", run_args.horizon);
  run->add_option("--lambda", run_args.lambda);
  run->add_option("--eps", run_args.eps, "Total budget");
  run->add_option("--eps-split", run_args.eps_split);
  run->add_option("--delta", run_args.delta);
  run->add_option("--c", run_args.c);
  run->add_option("--seed", run_args.seed);
  run->add_option("--data", run_args.data,
                  "Dataset file (JSON, or CSV with --t0) instead of a fresh "
                  "synthetic one");

  BoundsArgs bounds_args;
  bounds_args.in.n = 10;
  bounds_args.in.t0 = 10;
  bounds_args.in.lambda = 10.0;
  bounds_args.in.sigma2 = 0.1;
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate a theory bound");
  bounds->add_option("--kind", bounds_args.kind);
  bounds->add_option("--n", bounds_args.in.n);
  bounds->add_option("--t0", bounds_args.in.t0);
  bounds->add_option("--horizon", bounds_args.horizon);
  bounds->add_option("--lambda", bounds_args.in.lambda);
  bounds->add_option("--eps", bounds_args.eps, "Total budget");
  bounds->add_option("--eps-split", bounds_args.eps_split);
  bounds->add_option("--delta", bounds_args.in.delta);
  bounds->add_option("--sigma2", bounds_args.in.sigma2);
  bounds->add_option("--s", bounds_args.in.s);
  bounds->add_option("--psi", bounds_args.in.psi);
  bounds->add_option("--xi", bounds_args.in.xi);
  bounds->add_option("--c", bounds_args.in.c);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Emit a synthetic dataset");
  gen->add_option("--n", gen_args.n);
  gen->add_option("--t0", gen_args.t0);
  gen->add_option("--horizon", gen_args.horizon);
  gen->add_option("--seed", gen_args.seed);
  gen->add_flag("--donor-mean-target", gen_args.donor_mean_target);
  gen->add_option("--out", gen_args.out, "Output path (.json or .csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sweep) return RunSweepCommand(sweep_args);
    if (*run) return RunRunCommand(run_args);
    if (*bounds) return RunBoundsCommand(bounds_args);
    if (*gen) return RunGenCommand(gen_args);
  } catch (const dpsc::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
