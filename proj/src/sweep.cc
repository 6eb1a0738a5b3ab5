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

#include "dpsc/sweep.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/SVD>

#include "dpsc/bounds.h"
#include "dpsc/datagen.h"
#include "dpsc/objective_perturbation.h"
#include "dpsc/output_perturbation.h"
#include "dpsc/ridge.h"
#include "dpsc/serialize.h"

namespace dpsc {
namespace {

// Path tags keeping dataset streams apart from (cell, rep) streams.
constexpr std::uint64_t kDatasetTag = 0xDA7A;

struct CellContext {
  int dataset = 0;
  bool bounded = false;
  std::optional<double> theory_bound;
  double eps0 = 0.0;
  double delta_reg = 0.0;
};

double Rmse(const Vector& pred, const Vector& truth) {
  return (pred - truth).norm() / std::sqrt(static_cast<double>(truth.size()));
}

std::optional<double> TheoryBound(const SweepCell& cell,
                                  const GeneratedDataset& data, double xi,
                                  const LatentModelSpec& latent) {
  if (!(cell.lambda > 0.0)) return std::nullopt;
  const DonorPanel& panel = data.panel;
  const Matrix m_post = panel.truth()->signal.rightCols(panel.horizon());
  const FitResult reg =
      RidgeFit(panel.pre(), data.target.pre(), cell.lambda);

  BoundInputs in;
  in.n = cell.n;
  in.t0 = cell.t0;
  in.T = cell.T;
  in.lambda = cell.lambda;
  in.sigma2 = latent.noise_var;
  in.s = latent.noise_support;
  in.psi = std::max(1.0, reg.coeffs.cwiseAbs().maxCoeff());
  in.m_post_norm = Eigen::JacobiSVD<Matrix>(m_post).singularValues()(0);
  in.xi = xi;
  switch (cell.algorithm) {
    case Algorithm::kNonPrivate:
      // The baseline bound has no privacy terms; any positive budget passes.
      in.eps1 = in.eps2 = 1.0;
      return BoundNonPrivate(in);
    case Algorithm::kOutput:
      in.eps1 = cell.eps1;
      in.eps2 = cell.eps2;
      return BoundOutput(in);
    case Algorithm::kObjective:
      in.eps1 = cell.eps1;
      in.eps2 = cell.eps2;
      in.delta = cell.delta;
      in.c = cell.c;
      return BoundObjective(in);
  }
  return std::nullopt;
}

SweepRecord RunOne(const SweepCell& cell, const CellContext& ctx,
                   const GeneratedDataset& data, std::uint64_t master,
                   std::size_t cell_index, int rep) {
  Rng rng = Rng::Derive(master, {cell_index, static_cast<std::uint64_t>(rep)});
  const DonorPanel& panel = data.panel;
  const TargetSeries& target = data.target;

  Vector coeffs;
  Vector prediction;
  switch (cell.algorithm) {
    case Algorithm::kNonPrivate: {
      ScPrediction out = ScFitPredict(panel, target, cell.lambda);
      coeffs = std::move(out.fit.coeffs);
      prediction = std::move(out.prediction);
      break;
    }
    case Algorithm::kOutput: {
      DpscOutConfig cfg{cell.lambda, cell.eps1, cell.eps2, true};
      PrivateOutput out = DpscOut(panel, target, cfg, rng);
      coeffs = std::move(out.fit->coeffs);
      prediction = std::move(out.prediction);
      break;
    }
    case Algorithm::kObjective: {
      DpscObjConfig cfg;
      cfg.lambda = cell.lambda;
      cfg.eps1 = cell.eps1;
      cfg.eps2 = cell.eps2;
      cfg.delta = cell.delta;
      cfg.c = cell.c;
      cfg.release_coeffs = true;
      PrivateOutput out = DpscObj(panel, target, cfg, rng);
      coeffs = std::move(out.fit->coeffs);
      prediction = std::move(out.prediction);
      break;
    }
  }

  SweepRecord r;
  r.algorithm = cell.algorithm;
  r.n = cell.n;
  r.t0 = cell.t0;
  r.T = cell.T;
  r.lambda = cell.lambda;
  r.eps1 = cell.eps1;
  r.eps2 = cell.eps2;
  r.delta = cell.delta;
  r.c = cell.c;
  r.rep = rep;
  r.seed = rng.seed();
  r.rmse_pre = Rmse(panel.pre().transpose() * coeffs, target.signal_pre());
  r.rmse_post = Rmse(prediction, target.signal_post());
  r.bounded = ctx.bounded;
  r.theory_bound = ctx.theory_bound;
  r.eps0 = ctx.eps0;
  r.delta_reg = ctx.delta_reg;
  return r;
}

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<SweepCell> EnumerateCells(const SweepConfig& config) {
  std::vector<SweepCell> cells;
  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    const DatasetSize size = config.sizes[s];
    for (Algorithm algorithm : config.algorithms) {
      for (double lambda_value : config.lambdas) {
        SweepCell base;
        base.size_index = static_cast<int>(s);
        base.algorithm = algorithm;
        base.n = size.n;
        base.t0 = size.t0;
        base.T = size.t0 + config.horizon;
        base.lambda = config.lambda_relative_to_t0 ? lambda_value * size.t0
                                                   : lambda_value;
        if (algorithm == Algorithm::kNonPrivate) {
          cells.push_back(base);
          continue;
        }
        for (double eps : config.epsilons) {
          SweepCell cell = base;
          cell.eps1 = config.eps_split * eps;
          cell.eps2 = eps - cell.eps1;
          if (algorithm == Algorithm::kOutput) {
            cells.push_back(cell);
            continue;
          }
          cell.c = config.c.value_or(DefaultC(size.n, size.t0));
          for (double delta : config.deltas) {
            cell.delta = delta;
            cells.push_back(cell);
          }
        }
      }
    }
  }
  return cells;
}

SweepResult RunSweep(const SweepConfig& config, Execution exec) {
  config.Validate();
  SweepResult result;
  result.cells = EnumerateCells(config);
  const std::vector<SweepCell>& cells = result.cells;

  // Datasets are generated up front, serially, from their own streams.
  std::vector<GeneratedDataset> datasets;
  std::vector<CellContext> contexts(cells.size());
  if (config.dataset_mode == DatasetMode::kFixedPerSize) {
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
      const DatasetSize size = config.sizes[s];
      datasets.push_back(GenerateLinearPanel(
          size.n, size.t0, size.t0 + config.horizon, config.latent,
          Rng::DeriveSeed(config.seed, {kDatasetTag, 0, s})));
    }
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const SweepCell& cell = cells[k];
    CellContext& ctx = contexts[k];
    if (config.dataset_mode == DatasetMode::kFixedPerSize) {
      ctx.dataset = cell.size_index;
    } else {
      ctx.dataset = static_cast<int>(datasets.size());
      datasets.push_back(GenerateLinearPanel(
          cell.n, cell.t0, cell.T, config.latent,
          Rng::DeriveSeed(config.seed, {kDatasetTag, 1, k})));
    }
    const GeneratedDataset& data = datasets[ctx.dataset];
    ctx.bounded = ValidateBounds(data.panel, data.target).bounded();
    if (cell.algorithm == Algorithm::kObjective) {
      const ObjBranch branch = ComputeBranch(cell.lambda, cell.eps1, cell.c);
      ctx.eps0 = branch.eps0;
      ctx.delta_reg = branch.delta_reg;
    }
    ctx.theory_bound = TheoryBound(cell, data, config.xi, config.latent);
  }

  const std::size_t reps = static_cast<std::size_t>(config.reps);
  const std::size_t total = cells.size() * reps;
  result.records.resize(total);

  if (exec == Execution::kSerial) {
    for (std::size_t task = 0; task < total; ++task) {
      const std::size_t k = task / reps;
      result.records[task] =
          RunOne(cells[k], contexts[k], datasets[contexts[k].dataset],
                 config.seed, k, static_cast<int>(task % reps));
    }
  } else {
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t task = 0; task < count; ++task) {
      const std::size_t k = static_cast<std::size_t>(task) / reps;
      try {
        result.records[task] =
            RunOne(cells[k], contexts[k], datasets[contexts[k].dataset],
                   config.seed, k, static_cast<int>(task % reps));
      } catch (...) {
#pragma omp critical(dpsc_sweep_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  result.aggregate = Aggregate(result.records);
  return result;
}

std::vector<AggregateRow> Aggregate(const std::vector<SweepRecord>& records) {
  using Key = std::tuple<int, int, int, int, double, double, double, double,
                         double>;
  std::map<Key, std::size_t> index;
  std::vector<AggregateRow> rows;
  for (const SweepRecord& r : records) {
    const Key key{static_cast<int>(r.algorithm), r.n, r.t0, r.T, r.lambda,
                  r.eps1, r.eps2, r.delta, r.c};
    auto [it, inserted] = index.emplace(key, rows.size());
    if (inserted) {
      AggregateRow row;
      row.algorithm = r.algorithm;
      row.n = r.n;
      row.t0 = r.t0;
      row.T = r.T;
      row.lambda = r.lambda;
      row.eps1 = r.eps1;
      row.eps2 = r.eps2;
      row.delta = r.delta;
      row.c = r.c;
      row.bounded = r.bounded;
      row.theory_bound = r.theory_bound;
      row.eps0 = r.eps0;
      row.delta_reg = r.delta_reg;
      row.min_rmse_post = r.rmse_post;
      row.max_rmse_post = r.rmse_post;
      rows.push_back(row);
    }
    AggregateRow& row = rows[it->second];
    row.mean_rmse_pre += r.rmse_pre;
    row.mean_rmse_post += r.rmse_post;
    row.min_rmse_post = std::min(row.min_rmse_post, r.rmse_post);
    row.max_rmse_post = std::max(row.max_rmse_post, r.rmse_post);
    ++row.reps;
  }
  for (AggregateRow& row : rows) {
    row.mean_rmse_pre /= row.reps;
    row.mean_rmse_post /= row.reps;
  }
  // Second pass for the variance, which avoids cancellation.
  std::vector<double> ss(rows.size(), 0.0);
  for (const SweepRecord& r : records) {
    const Key key{static_cast<int>(r.algorithm), r.n, r.t0, r.T, r.lambda,
                  r.eps1, r.eps2, r.delta, r.c};
    const std::size_t i = index.at(key);
    const double d = r.rmse_post - rows[i].mean_rmse_post;
    ss[i] += d * d;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int reps = rows[i].reps;
    if (reps > 1) {
      const double sd = std::sqrt(ss[i] / (reps - 1));
      rows[i].ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(reps));
    }
  }
  return rows;
}

void WriteRecordsCsv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << kRecordsHeader << '\n';
  for (const SweepRecord& r : rows) {
    out << ToString(r.algorithm) << ',' << r.n << ',' << r.t0 << ',' << r.T
        << ',' << FormatDouble(r.lambda) << ',' << FormatDouble(r.eps1) << ','
        << FormatDouble(r.eps2) << ',' << FormatDouble(r.delta) << ','
        << FormatDouble(r.c) << ',' << r.rep << ',' << r.seed << ','
        << FormatDouble(r.rmse_pre) << ',' << FormatDouble(r.rmse_post) << ','
        << (r.bounded ? 1 : 0) << ',' << OptionalNumber(r.theory_bound) << ','
        << FormatDouble(r.eps0) << ',' << FormatDouble(r.delta_reg) << '\n';
  }
}

void WriteAggregateCsv(std::ostream& out,
                       const std::vector<AggregateRow>& rows) {
  out << kAggregateHeader << '\n';
  for (const AggregateRow& r : rows) {
    out << ToString(r.algorithm) << ',' << r.n << ',' << r.t0 << ',' << r.T
        << ',' << FormatDouble(r.lambda) << ',' << FormatDouble(r.eps1) << ','
        << FormatDouble(r.eps2) << ',' << FormatDouble(r.delta) << ','
        << FormatDouble(r.c) << ',' << (r.bounded ? 1 : 0) << ','
        << OptionalNumber(r.theory_bound) << ',' << FormatDouble(r.eps0) << ','
        << FormatDouble(r.delta_reg) << ',' << FormatDouble(r.mean_rmse_pre)
        << ',' << FormatDouble(r.min_rmse_post) << ','
        << FormatDouble(r.max_rmse_post) << ','
        << FormatDouble(r.mean_rmse_post) << ','
        << FormatDouble(r.ci_half_width) << ',' << r.reps << '\n';
  }
}

void WriteSweepOutputs(const SweepConfig& config, const SweepResult& result) {
  auto write = [](const std::string& path, auto&& body) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    body(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
  };
  write(config.output,
        [&](std::ostream& out) { WriteRecordsCsv(out, result.records); });
  write(config.aggregate_output,
        [&](std::ostream& out) { WriteAggregateCsv(out, result.aggregate); });
}

}  // namespace dpsc
