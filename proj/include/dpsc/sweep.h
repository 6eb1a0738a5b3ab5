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

// Monte-Carlo sweep engine.
//
// A sweep is a grid of cells (dataset size x algorithm x lambda x eps x
// delta), each run `reps` times. Every (cell, rep) pair owns an RNG stream
// derived from (seed, cell, rep), and records are stored at their (cell, rep)
// slot, so the output is identical whatever the schedule or thread count.

#ifndef DPSC_SWEEP_H_
#define DPSC_SWEEP_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpsc/execution.h"
#include "dpsc/model.h"
#include "json.hpp"

namespace dpsc {

enum class Algorithm { kNonPrivate, kOutput, kObjective };

std::string ToString(Algorithm algorithm);
// Accepts "nonprivate", "dpsc_out"/"out", "dpsc_obj"/"obj".
Algorithm ParseAlgorithm(const std::string& name);

enum class DatasetMode { kFixedPerSize, kFreshPerCell };

struct DatasetSize {
  int n = 10;
  int t0 = 10;
};

// Raised for invalid sweep configurations; the message names the offending
// field or cell.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
  std::vector<Algorithm> algorithms = {Algorithm::kNonPrivate,
                                       Algorithm::kOutput,
                                       Algorithm::kObjective};
  std::vector<double> lambdas = {10.0};
  // When set, each lambda value is multiplied by the cell's t0.
  bool lambda_relative_to_t0 = false;
  // Total budgets; eps1 = eps_split * eps, eps2 = eps - eps1.
  std::vector<double> epsilons = {100.0};
  // Only the objective mechanism uses delta; others run once with 0.
  std::vector<double> deltas = {0.0};
  std::vector<DatasetSize> sizes = {{10, 10}};
  int horizon = 3;
  int reps = 500;
  double eps_split = 0.5;
  std::uint64_t seed = 0;
  DatasetMode dataset_mode = DatasetMode::kFixedPerSize;
  // Eigenvalue bound for the objective mechanism; unset uses DefaultC(n, t0).
  std::optional<double> c;
  // xi in the closed-form ridge estimation error used by the theory bound.
  double xi = 0.5;
  LatentModelSpec latent;
  std::string output;            // records CSV (may be empty in-process)
  std::string aggregate_output;  // aggregate CSV (may be empty in-process)

  void Validate() const;
};

SweepConfig SweepConfigFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const SweepConfig& config);

// One grid point.
struct SweepCell {
  int size_index = 0;
  Algorithm algorithm = Algorithm::kNonPrivate;
  int n = 0;
  int t0 = 0;
  int T = 0;
  double lambda = 0.0;
  double eps1 = 0.0;  // 0 for the non-private baseline
  double eps2 = 0.0;
  double delta = 0.0;
  double c = 0.0;  // 0 unless objective perturbation
};

// Cells in the canonical order used for record indexing.
std::vector<SweepCell> EnumerateCells(const SweepConfig& config);

struct SweepRecord {
  Algorithm algorithm = Algorithm::kNonPrivate;
  int n = 0;
  int t0 = 0;
  int T = 0;
  double lambda = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
  double c = 0.0;
  int rep = 0;
  std::uint64_t seed = 0;
  double rmse_pre = 0.0;
  double rmse_post = 0.0;
  bool bounded = false;
  std::optional<double> theory_bound;
  double eps0 = 0.0;
  double delta_reg = 0.0;
};

struct AggregateRow {
  Algorithm algorithm = Algorithm::kNonPrivate;
  int n = 0;
  int t0 = 0;
  int T = 0;
  double lambda = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
  double c = 0.0;
  bool bounded = false;
  std::optional<double> theory_bound;
  double eps0 = 0.0;
  double delta_reg = 0.0;
  double mean_rmse_pre = 0.0;
  double min_rmse_post = 0.0;
  double max_rmse_post = 0.0;
  double mean_rmse_post = 0.0;
  // 1.96 * sample stddev / sqrt(reps).
  double ci_half_width = 0.0;
  int reps = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<SweepRecord> records;  // cell-major, rep-minor
  std::vector<AggregateRow> aggregate;
};

// Runs the whole grid. Validates first, so a bad cell fails before any work.
SweepResult RunSweep(const SweepConfig& config,
                     Execution exec = Execution::kParallel);

// Groups by cell (first-appearance order) and summarises rmse_post.
std::vector<AggregateRow> Aggregate(const std::vector<SweepRecord>& records);

inline constexpr char kRecordsHeader[] =
    "algorithm,n,t0,T,lambda,eps1,eps2,delta,c,rep,seed,rmse_pre,rmse_post,"
    "bounded,theory_bound,eps0,delta_reg";
inline constexpr char kAggregateHeader[] =
    "algorithm,n,t0,T,lambda,eps1,eps2,delta,c,bounded,theory_bound,eps0,"
    "delta_reg,mean_rmse_pre,min_rmse_post,max_rmse_post,mean_rmse_post,"
    "ci_half_width,reps";

void WriteRecordsCsv(std::ostream& out, const std::vector<SweepRecord>& rows);
void WriteAggregateCsv(std::ostream& out,
                       const std::vector<AggregateRow>& rows);

// Writes config.output / config.aggregate_output (when non-empty).
// Throws IoError if a file cannot be written.
void WriteSweepOutputs(const SweepConfig& config, const SweepResult& result);

}  // namespace dpsc

#endif  // DPSC_SWEEP_H_
