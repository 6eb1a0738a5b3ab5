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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed; nothing here is
// tuned to the observed numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dpsc/internal/noise_override.h"
#include "dpsc/noise.h"
#include "dpsc/objective_perturbation.h"
#include "dpsc/output_perturbation.h"
#include "dpsc/ridge.h"
#include "dpsc/sensitivity_probe.h"
#include "dpsc/sweep.h"
#include "test_util.h"

#ifndef DPSC_CLI_PATH
#error "DPSC_CLI_PATH must point at the dpsc executable"
#endif

namespace dpsc {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(const std::string& name, const std::function<Outcome()>& check) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("[%s] %s (%.2fs): %s\n", out.pass ? "PASS" : "FAIL",
              name.c_str(), secs, out.detail.c_str());
  std::fflush(stdout);
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- ridge --

Outcome RidgeOracle() {
  const auto start = Clock::now();
  Rng rng(20260101);
  const double lambdas[] = {0.1, 1.0, 10.0};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + static_cast<int>(rng.engine()() % 10);
    const int t0 = 1 + static_cast<int>(rng.engine()() % 20);
    const Matrix x = testing::UniformMatrix(n, t0, rng);
    const Vector y = testing::UniformVector(t0, rng);
    const double lambda = lambdas[k % 3];
    const testing::DescentResult gd =
        testing::GradientDescentRidge(x, y, lambda);
    if (gd.gradient_norm > 1e-12) {
      return {false, "descent oracle did not converge on instance " +
                         std::to_string(k)};
    }
    worst = std::max(worst,
                     (RidgeFit(x, y, lambda).coeffs - gd.f).cwiseAbs().maxCoeff());
  }
  const double secs = Seconds(start);
  return {worst <= 1e-8 && secs < 5.0,
          Fmt("20 instances, max coordinate error %.3g (<= 1e-8), %.2fs (< 5s)",
              worst, secs)};
}

Outcome LowerBoundFixtureCheck() {
  double worst = 0.0;
  for (int n : {3, 10, 100}) {
    const LowerBoundFixture fx = MakeLowerBoundFixture(n);
    const double nn = n;
    const Vector f =
        RidgeFit(fx.panel.pre(), fx.target.pre(), kLowerBoundLambda).coeffs;
    const Vector g =
        RidgeFit(fx.neighbor.pre(), fx.target.pre(), kLowerBoundLambda).coeffs;
    worst = std::max(worst, std::abs(f(0) - nn * nn / (nn * nn + 2 * nn - 1)));
    for (int i = 1; i < n; ++i) {
      worst = std::max(worst, std::abs(g(i) - nn / (2 * nn - 1)));
    }
  }
  auto gap = [](int n) {
    const LowerBoundFixture fx = MakeLowerBoundFixture(n);
    return RidgeNeighborGap(fx.panel.pre(), fx.neighbor.pre(), fx.target.pre(),
                            kLowerBoundLambda);
  };
  const double ratio = gap(100) / gap(25);
  return {worst <= 1e-9 && ratio >= 1.8 && ratio <= 2.2,
          Fmt("coordinate error %.3g (<= 1e-9), gap(100)/gap(25) = %.4f "
              "(in [1.8, 2.2])",
              worst, ratio)};
}

// ---------------------------------------------------------------- noise --

Outcome ProbeCheck() {
  const auto start = Clock::now();
  Rng rng(7);
  const ProbeResult r = EmpiricalSensitivityProbe(5, 5, 10.0, 1000, rng);
  const double bound = SensitivityRidgeCoeffs(5, 5, 10.0);
  const double secs = Seconds(start);
  return {r.max_gap <= bound && std::abs(bound - 7.2111) < 1e-4 && secs < 10.0,
          Fmt("max gap %.4f <= %.4f over 1000 trials, %.2fs (< 10s)",
              r.max_gap, bound, secs)};
}

Outcome SamplerCheck() {
  const int draws = 100000;
  Rng rng(11);
  double norm_sum = 0.0;
  Vector sum = Vector::Zero(5);
  for (int k = 0; k < draws; ++k) {
    const Vector v = SampleHighDimLaplace(5, 1.0, rng);
    norm_sum += v.norm();
    sum += v;
  }
  const double mean_norm = norm_sum / draws;
  const double centre = (sum / draws).norm();

  const Vector g = SampleGaussianVector(draws, 2.0, rng);
  const double gm = g.mean();
  const double gvar = (g.array() - gm).square().sum() / (draws - 1);

  int above = 0;
  for (int k = 0; k < draws; ++k) {
    if (std::abs(SampleHighDimLaplace(1, 1.0, rng)(0)) > 1.0) ++above;
  }
  const double tail = static_cast<double>(above) / draws;
  const double e1 = std::exp(-1.0);

  const bool ok = std::abs(mean_norm - 5.0) <= 0.02 * 5.0 && centre <= 0.02 &&
                  std::abs(gvar - 4.0) <= 0.02 * 4.0 &&
                  std::abs(tail - e1) <= 0.01 * e1;
  std::ostringstream d;
  d << "laplace mean norm " << mean_norm << " (5 +- 2%), |mean vector| "
    << centre << " (<= 0.02), gaussian var " << gvar << " (4 +- 2%), "
    << "P(|v|>1) " << tail << " (e^-1 +- 1%)";
  return {ok, d.str()};
}

// ----------------------------------------------------------- mechanisms --

Outcome ZeroNoiseCheck() {
  Rng data(3);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 5, t0 = 4 + k, h = 1 + k % 3;
    const DonorPanel panel(testing::UniformMatrix(n, t0 + h, data), t0);
    const TargetSeries target(testing::UniformVector(t0 + h, data), t0);
    const double lambda = 1.0 + k;
    const Vector ref = ScFitPredict(panel, target, lambda).prediction;

    Rng a(k), b(k);
    const Vector out = internal::DpscOutWithOverride(
                           panel, target, {lambda, 1.0, 1.0, false}, a,
                           internal::NoiseScaleOverride::Zero())
                           .prediction;
    DpscObjConfig cfg;
    cfg.lambda = lambda;
    cfg.eps1 = 1000.0;
    cfg.eps2 = 1.0;
    const PrivateOutput obj = internal::DpscObjWithOverride(
        panel, target, cfg, b, internal::NoiseScaleOverride::Zero());
    if (obj.noise.delta_reg != 0.0) return {false, "instance not in Delta=0"};
    worst = std::max({worst, (out - ref).cwiseAbs().maxCoeff(),
                      (obj.prediction - ref).cwiseAbs().maxCoeff()});
  }
  return {worst <= 1e-10,
          Fmt("10 instances, max deviation from non-private %.3g (<= 1e-10)",
              worst)};
}

Outcome StationarityCheck() {
  Rng data(4);
  double worst = 0.0;
  int branches[2] = {0, 0};
  int families[2] = {0, 0};
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 9, t0 = 2 + (k * 7) % 15;
    const DonorPanel panel(testing::UniformMatrix(n, t0 + 2, data), t0);
    const TargetSeries target(testing::UniformVector(t0 + 2, data), t0);
    DpscObjConfig cfg;
    cfg.lambda = 0.5 + k % 5;
    cfg.eps1 = (k % 2 == 0) ? 0.3 : 60.0;
    cfg.eps2 = 1.0;
    cfg.delta = ((k / 2) % 2 == 0) ? 0.0 : 1e-6;
    cfg.release_coeffs = true;
    Rng rng(500 + k);
    const PrivateOutput out = DpscObj(panel, target, cfg, rng);
    ++branches[out.noise.delta_reg > 0.0 ? 1 : 0];
    ++families[cfg.delta > 0.0 ? 1 : 0];

    Rng replay(500 + k);
    const Vector b = cfg.delta > 0.0
                         ? SampleGaussianVector(n, out.noise.beta, replay)
                         : SampleHighDimLaplace(n, out.noise.beta, replay);
    const Vector grad = testing::LoopGradient(
                            panel.pre(), target.pre(),
                            cfg.lambda + out.noise.delta_reg, out.fit->coeffs) +
                        b / t0;
    const double scale =
        (2.0 * panel.pre() * target.pre()).norm() / t0 + b.norm() / t0;
    worst = std::max(worst, grad.norm() / scale);
  }
  const bool covered = branches[0] > 0 && branches[1] > 0 && families[0] > 0 &&
                       families[1] > 0;
  std::ostringstream d;
  d << "50 instances (" << branches[0] << " Delta=0, " << branches[1]
    << " Delta>0; " << families[0] << " Laplace, " << families[1]
    << " Gaussian), max relative gradient " << worst << " (<= 1e-8)";
  return {covered && worst <= 1e-8, d.str()};
}

Outcome BranchArithmetic() {
  // Plug-in values evaluated independently at 40 significant digits.
  struct Case {
    const char* name;
    double got;
    double want;
  };
  const ObjBranch first = ComputeBranch(1.0, 2.0, 1.0);
  const ObjBranch second = ComputeBranch(1.0, 1.0, 1.0);
  const double tie_threshold = BranchThreshold(2.0, 3.0);
  const ObjBranch tie = ComputeBranch(2.0, tie_threshold, 3.0);
  const Case cases[] = {
      {"eps0 first branch", first.eps0,
       0.6137056388801093811655357570836468630},
      {"Delta first branch", first.delta_reg, 0.0},
      {"eps0 else branch", second.eps0, 0.5},
      {"Delta else branch", second.delta_reg,
       2.520811664187798464234883251042082923},
      {"tie goes to else branch", tie.eps0, tie_threshold / 2.0},
      {"beta_laplace(8,1,100,1)", BetaLaplace(8, 1, 100.0, 1.0), 16.0},
      {"beta_laplace(8,1,1,1)", BetaLaplace(8, 1, 1.0, 1.0),
       6.828427124746190097603377448419396157},
      {"beta_gaussian(8,1,1,2/e)", BetaGaussian(8, 1, 1.0, 2.0 / std::exp(1.0)),
       27.71281292110203669495590845821386157},
      {"beta_gaussian(10,10,1,1e-6)", BetaGaussian(10, 10, 1.0, 1e-6),
       929.7842146105702940264451150314795521},
      {"default_c(1,1)", DefaultC(1, 1), 2.0},
      {"default_c(10,10)", DefaultC(10, 10),
       130.4159457879229548012824103037860805},
  };
  double worst_rel = 0.0;
  std::string worst_name = "none";
  for (const Case& c : cases) {
    const double rel = std::abs(c.got - c.want) / std::max(1.0, std::abs(c.want));
    if (rel > worst_rel) {
      worst_rel = rel;
      worst_name = c.name;
    }
  }
  return {worst_rel <= 1e-12 && tie.extra_regularization,
          std::to_string(std::size(cases)) +
              " plug-ins, worst relative error " + Fmt("%.3g", worst_rel) +
              " at " + worst_name + " (<= 1e-12)"};
}

// --------------------------------------------------------------- sweeps --

// All sweep results feed the empirical-vs-theory check.
std::vector<AggregateRow> all_rows;

constexpr std::uint64_t kSweepSeed = 2024;
const std::vector<double> kLambdaGrid = {1,   2,   5,    10,   20,   50,
                                         100, 200, 500, 1000, 2000, 5000};
const std::vector<double> kEpsGrid = {2, 4, 10, 20, 40, 100, 200};
const std::vector<DatasetSize> kFourSizes = {
    {10, 10}, {10, 100}, {100, 10}, {100, 100}};

SweepResult Run(const SweepConfig& cfg) {
  SweepResult r = RunSweep(cfg);
  all_rows.insert(all_rows.end(), r.aggregate.begin(), r.aggregate.end());
  return r;
}

std::vector<AggregateRow> Select(const std::vector<AggregateRow>& rows,
                                 Algorithm algorithm,
                                 const std::function<bool(const AggregateRow&)>&
                                     keep = nullptr) {
  std::vector<AggregateRow> out;
  for (const AggregateRow& r : rows) {
    if (r.algorithm == algorithm && (!keep || keep(r))) out.push_back(r);
  }
  return out;
}

Outcome LambdaTrend() {
  const auto start = Clock::now();
  SweepConfig cfg;
  cfg.lambdas = kLambdaGrid;
  cfg.epsilons = {100.0};  // eps1 = eps2 = 50
  cfg.deltas = {0.0};
  cfg.sizes = {{10, 10}};
  cfg.reps = 500;
  cfg.seed = kSweepSeed;
  const SweepResult r = Run(cfg);
  const double secs = Seconds(start);

  bool ok = secs < 120.0;
  std::ostringstream d;
  double at_max[3] = {0, 0, 0};
  const Algorithm algs[] = {Algorithm::kNonPrivate, Algorithm::kOutput,
                            Algorithm::kObjective};
  for (int a = 0; a < 3; ++a) {
    const std::vector<AggregateRow> rows = Select(r.aggregate, algs[a]);
    at_max[a] = rows.back().mean_rmse_post;
    if (algs[a] == Algorithm::kNonPrivate) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].mean_rmse_post < rows[best].mean_rmse_post) best = i;
    }
    const bool interior = best > 0 && best + 1 < rows.size();
    const bool in_window = rows[best].lambda >= 2.0 && rows[best].lambda <= 50.0;
    ok = ok && interior && in_window;
    d << ToString(algs[a]) << " argmin lambda=" << rows[best].lambda
      << (in_window ? "" : " (outside [2,50])")
      << (interior ? "" : " (not U-shaped)") << "; ";
  }
  const double hi = *std::max_element(at_max, at_max + 3);
  const double lo = *std::min_element(at_max, at_max + 3);
  const bool converge = (hi - lo) <= 0.10 * lo;
  ok = ok && converge;
  d << "at lambda=5000 means " << at_max[0] << "/" << at_max[1] << "/"
    << at_max[2] << " spread " << Fmt("%.2f%%", 100.0 * (hi - lo) / lo)
    << " (<= 10%); " << Fmt("%.2fs (< 120s)", secs);
  return {ok, d.str()};
}

Outcome EpsTrend() {
  SweepConfig cfg;
  cfg.algorithms = {Algorithm::kOutput, Algorithm::kObjective};
  cfg.lambdas = {10.0};  // lambda = t0
  cfg.epsilons = kEpsGrid;
  cfg.deltas = {0.0};
  cfg.sizes = {{10, 10}};
  cfg.reps = 500;
  cfg.seed = kSweepSeed;
  const SweepResult r = Run(cfg);

  bool ok = true;
  std::ostringstream d;
  for (Algorithm a : {Algorithm::kOutput, Algorithm::kObjective}) {
    const std::vector<AggregateRow> rows = Select(r.aggregate, a);
    const bool ends = rows.back().mean_rmse_post < rows.front().mean_rmse_post;
    std::vector<std::string> breaks;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const double lower_j = rows[j].mean_rmse_post - rows[j].ci_half_width;
        const double upper_i = rows[i].mean_rmse_post + rows[i].ci_half_width;
        if (lower_j > upper_i) {
          std::ostringstream b;
          b << "eps " << rows[i].eps1 + rows[i].eps2 << "->"
            << rows[j].eps1 + rows[j].eps2 << " (" << rows[i].mean_rmse_post
            << "->" << rows[j].mean_rmse_post << ")";
          breaks.push_back(b.str());
        }
      }
    }
    ok = ok && ends && breaks.empty();
    d << ToString(a) << ": eps=2 " << rows.front().mean_rmse_post
      << " eps=200 " << rows.back().mean_rmse_post;
    if (!breaks.empty()) {
      d << ", increases beyond CI:";
      for (const std::string& b : breaks) d << ' ' << b;
    } else {
      d << ", nonincreasing up to CI";
    }
    d << "; ";
  }
  return {ok, d.str()};
}

SweepResult four_size_sweep;

Outcome GaussianVersusLaplace() {
  SweepConfig cfg;
  cfg.algorithms = {Algorithm::kOutput, Algorithm::kObjective};
  cfg.lambdas = {1.0};
  cfg.lambda_relative_to_t0 = true;
  cfg.epsilons = kEpsGrid;
  cfg.deltas = {0.0, 1e-6};
  cfg.sizes = kFourSizes;
  cfg.reps = 500;
  cfg.seed = kSweepSeed;
  four_size_sweep = Run(cfg);

  bool ok = true;
  std::ostringstream d;
  for (DatasetSize size : {DatasetSize{10, 100}, DatasetSize{100, 100}}) {
    for (double eps : {2.0, 4.0}) {
      auto pick = [&](double delta) {
        return Select(four_size_sweep.aggregate, Algorithm::kObjective,
                      [&](const AggregateRow& r) {
                        return r.n == size.n && r.t0 == size.t0 &&
                               r.eps1 + r.eps2 == eps && r.delta == delta;
                      })
            .at(0)
            .mean_rmse_post;
      };
      const double lap = pick(0.0);
      const double gauss = pick(1e-6);
      const bool cell_ok = gauss <= lap;
      ok = ok && cell_ok;
      d << "(n=" << size.n << ",t0=" << size.t0 << ",eps=" << eps
        << ") gauss " << gauss << (cell_ok ? " <= " : " > ") << "laplace "
        << lap << "; ";
    }
  }
  return {ok, d.str()};
}

Outcome ObjectiveBeatsOutput() {
  bool ok = true;
  int cells = 0;
  std::ostringstream bad;
  for (DatasetSize size : kFourSizes) {
    for (double eps : kEpsGrid) {
      if (eps < 4.0) continue;
      auto pick = [&](Algorithm a) {
        return Select(four_size_sweep.aggregate, a,
                      [&](const AggregateRow& r) {
                        return r.n == size.n && r.t0 == size.t0 &&
                               r.eps1 + r.eps2 == eps && r.delta == 0.0;
                      })
            .at(0)
            .mean_rmse_post;
      };
      const double obj = pick(Algorithm::kObjective);
      const double out = pick(Algorithm::kOutput);
      ++cells;
      if (!(obj <= out)) {
        ok = false;
        bad << " (n=" << size.n << ",t0=" << size.t0 << ",eps=" << eps
            << ": obj " << obj << " > out " << out << ")";
      }
    }
  }
  return {ok, std::to_string(cells) + " cells with eps >= 4 on four datasets" +
                  (ok ? ", obj <= out everywhere" : ", violations:" + bad.str())};
}

Outcome EmpiricalBelowTheory() {
  int cells = 0;
  std::vector<std::string> bad;
  double worst_ratio = 0.0;
  std::set<std::tuple<int, int, int, double, double, double, double>> seen;
  for (const AggregateRow& r : all_rows) {
    if (!r.theory_bound) continue;
    // The same cell can appear in more than one sweep; count it once.
    if (!seen.insert({static_cast<int>(r.algorithm), r.n, r.t0, r.lambda,
                      r.eps1, r.eps2, r.delta})
             .second) {
      continue;
    }
    ++cells;
    const double ratio = r.mean_rmse_post / *r.theory_bound;
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 1.0) {
      std::ostringstream b;
      b << ToString(r.algorithm) << "(n=" << r.n << ",t0=" << r.t0
        << ",lambda=" << r.lambda << ",eps=" << r.eps1 + r.eps2
        << ",delta=" << r.delta << ") " << Fmt("%.3gx", ratio);
      bad.push_back(b.str());
    }
  }
  std::ostringstream d;
  d << cells << " sweep cells, " << bad.size()
    << " above their bound, worst empirical/bound " << Fmt("%.3g", worst_ratio);
  for (std::size_t i = 0; i < bad.size(); ++i) d << "; " << bad[i];
  return {cells > 0 && bad.empty(), d.str()};
}

// ---------------------------------------------------------- determinism --

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome CliDeterminism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dpsc_acceptance";
  fs::create_directories(dir);
  std::string outputs[2][2];
  for (int run = 0; run < 2; ++run) {
    const fs::path records = dir / ("records_" + std::to_string(run) + ".csv");
    const fs::path agg = dir / ("aggregate_" + std::to_string(run) + ".csv");
    const fs::path config = dir / ("config_" + std::to_string(run) + ".json");
    std::ofstream(config) << nlohmann::json{
        {"algorithms", {"nonprivate", "dpsc_out", "dpsc_obj"}},
        {"lambda", {1, 10, 100}},
        {"eps", {2, 20}},
        {"delta", {0, 1e-6}},
        {"sizes", {{10, 10}, {20, 15}}},
        {"reps", 50},
        {"seed", 99},
        {"output", records.string()},
        {"aggregate_output", agg.string()}};
    const std::string cmd = std::string("\"") + DPSC_CLI_PATH +
                            "\" sweep --config \"" + config.string() +
                            "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status != 0) {
      return {false, "dpsc sweep exited with status " + std::to_string(status)};
    }
    outputs[run][0] = ReadFile(records);
    outputs[run][1] = ReadFile(agg);
  }
  fs::remove_all(dir);
  const bool same = outputs[0][0] == outputs[1][0] &&
                    outputs[0][1] == outputs[1][1] && !outputs[0][0].empty();
  return {same, std::to_string(outputs[0][0].size()) + " + " +
                    std::to_string(outputs[0][1].size()) +
                    " bytes, two runs " + (same ? "identical" : "differ")};
}

}  // namespace
}  // namespace dpsc

int main() {
  using namespace dpsc;
  std::printf("acceptance suite, %d OpenMP threads\n", MaxThreads());
  Report("ridge oracle equivalence", RidgeOracle);
  Report("lower-bound fixture coordinates and sqrt(n) gap",
         LowerBoundFixtureCheck);
  Report("sensitivity probe below the coefficient sensitivity", ProbeCheck);
  Report("sampler statistics", SamplerCheck);
  Report("zero-noise reduction", ZeroNoiseCheck);
  Report("objective stationarity", StationarityCheck);
  Report("branch arithmetic", BranchArithmetic);
  Report("RMSE vs lambda: U-shape and convergence", LambdaTrend);
  Report("RMSE vs eps: decreasing", EpsTrend);
  Report("Gaussian <= Laplace objective noise at t0=100", GaussianVersusLaplace);
  Report("objective <= output for eps >= 4", ObjectiveBeatsOutput);
  Report("empirical RMSE <= theory bound on every sweep cell",
         EmpiricalBelowTheory);
  Report("CLI sweep byte-identical across runs", CliDeterminism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
