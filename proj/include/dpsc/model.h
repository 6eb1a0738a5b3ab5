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

#ifndef DPSC_MODEL_H_
#define DPSC_MODEL_H_

#include <optional>
#include <string>

#include <Eigen/Dense>

namespace dpsc {

// Donor-major storage: one row is one donor's full time series, so a
// neighbouring database differs in exactly one contiguous row.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Ground-truth decomposition X = M + Z of a generated panel.
struct PanelTruth {
  Matrix signal;  // M
  Matrix noise;   // Z
};

struct SeriesTruth {
  Vector signal;  // m
  Vector noise;   // z
};

// The donor pool X (n donors x T periods) with its pre/post split at t0.
// Immutable after construction; the constructor enforces 1 <= t0 < T,
// finiteness, and X == M + Z when truth is supplied.
class DonorPanel {
 public:
  DonorPanel(Matrix values, int t0, std::optional<PanelTruth> truth = {});

  const Matrix& values() const { return values_; }
  int t0() const { return t0_; }
  int num_donors() const { return static_cast<int>(values_.rows()); }
  int num_periods() const { return static_cast<int>(values_.cols()); }
  int horizon() const { return num_periods() - t0_; }
  const std::optional<PanelTruth>& truth() const { return truth_; }
  // True iff every |x_{i,t}| <= 1.
  bool bounded() const { return bounded_; }

  auto pre() const { return values_.leftCols(t0_); }
  auto post() const { return values_.rightCols(horizon()); }

 private:
  Matrix values_;
  int t0_;
  std::optional<PanelTruth> truth_;
  bool bounded_;
};

// The target unit y (length T) with the same split index as its panel.
class TargetSeries {
 public:
  TargetSeries(Vector values, int t0, std::optional<SeriesTruth> truth = {});

  const Vector& values() const { return values_; }
  int t0() const { return t0_; }
  int num_periods() const { return static_cast<int>(values_.size()); }
  int horizon() const { return num_periods() - t0_; }
  const std::optional<SeriesTruth>& truth() const { return truth_; }

  auto pre() const { return values_.head(t0_); }
  auto post() const { return values_.tail(horizon()); }

  // m_post when truth is known, otherwise the observed y_post.
  Vector signal_post() const;
  Vector signal_pre() const;

 private:
  Vector values_;
  int t0_;
  std::optional<SeriesTruth> truth_;
};

// Parameters of the linear latent model M_{i,t} = theta_i * t.
struct LatentModelSpec {
  double theta_mean = 4.0;
  double theta_var = 1.0;
  double theta_lo = 3.0;
  double theta_hi = 5.0;
  double noise_var = 0.1;
  double noise_support = 1.0;
  // When unset the target slope is drawn like the donors'.
  std::optional<double> target_theta;
  // Sets theta_0 to the donor mean (exactly representable target).
  bool target_is_donor_mean = false;

  void Validate() const;
};

struct PanelSplit {
  Matrix pre;
  Matrix post;
};

PanelSplit Split(const DonorPanel& panel);

// (1/sqrt(len)) * ||prediction - m_post||_2.
double RmsePost(const Vector& prediction, const Vector& m_post);

struct BoundsReport {
  bool panel_bounded = true;
  bool target_bounded = true;
  double max_abs_panel = 0.0;
  double max_abs_target = 0.0;
  // First offending entry, if any. Row -1 denotes the target series.
  std::optional<std::pair<int, int>> first_violation;

  bool bounded() const { return panel_bounded && target_bounded; }
  std::string Describe() const;
};

// Reports whether all entries lie in [-1, 1]. Violations are flagged, never
// raised: downstream sensitivity formulas assume the bound but still run.
BoundsReport ValidateBounds(const DonorPanel& panel,
                            const TargetSeries& target);

// Throws std::invalid_argument when the pair cannot be used together.
void CheckPaired(const DonorPanel& panel, const TargetSeries& target);

}  // namespace dpsc

#endif  // DPSC_MODEL_H_
