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

#include "dpsc/model.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dpsc {
namespace {

void CheckSplit(int t0, Eigen::Index periods) {
  if (t0 < 1 || t0 >= periods) {
    std::ostringstream msg;
    msg << "split index t0=" << t0 << " must satisfy 1 <= t0 < T=" << periods;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

DonorPanel::DonorPanel(Matrix values, int t0, std::optional<PanelTruth> truth)
    : values_(std::move(values)), t0_(t0), truth_(std::move(truth)) {
  if (values_.rows() < 1) {
    throw std::invalid_argument("donor panel needs at least one donor");
  }
  CheckSplit(t0_, values_.cols());
  if (!values_.allFinite()) {
    throw std::invalid_argument("donor panel contains non-finite entries");
  }
  if (truth_) {
    const auto& [m, z] = *truth_;
    if (m.rows() != values_.rows() || m.cols() != values_.cols() ||
        z.rows() != values_.rows() || z.cols() != values_.cols()) {
      throw std::invalid_argument("panel truth shape does not match values");
    }
    if (((m + z).array() != values_.array()).any()) {
      throw std::invalid_argument("panel values must equal signal + noise");
    }
  }
  bounded_ = values_.cwiseAbs().maxCoeff() <= 1.0;
}

TargetSeries::TargetSeries(Vector values, int t0,
                           std::optional<SeriesTruth> truth)
    : values_(std::move(values)), t0_(t0), truth_(std::move(truth)) {
  CheckSplit(t0_, values_.size());
  if (!values_.allFinite()) {
    throw std::invalid_argument("target series contains non-finite entries");
  }
  if (truth_) {
    const auto& [m, z] = *truth_;
    if (m.size() != values_.size() || z.size() != values_.size()) {
      throw std::invalid_argument("target truth length does not match values");
    }
    if (((m + z).array() != values_.array()).any()) {
      throw std::invalid_argument("target values must equal signal + noise");
    }
  }
}

Vector TargetSeries::signal_post() const {
  return truth_ ? Vector(truth_->signal.tail(horizon())) : Vector(post());
}

Vector TargetSeries::signal_pre() const {
  return truth_ ? Vector(truth_->signal.head(t0_)) : Vector(pre());
}

void LatentModelSpec::Validate() const {
  if (!(theta_lo < theta_hi)) {
    throw std::invalid_argument("theta_lo must be below theta_hi");
  }
  if (!(theta_var > 0.0)) {
    throw std::invalid_argument("theta_var must be positive");
  }
  if (!(noise_var >= 0.0)) {
    throw std::invalid_argument("noise_var must be nonnegative");
  }
  if (!(noise_support > 0.0)) {
    throw std::invalid_argument("noise_support must be positive");
  }
}

PanelSplit Split(const DonorPanel& panel) {
  return {panel.pre(), panel.post()};
}

double RmsePost(const Vector& prediction, const Vector& m_post) {
  if (prediction.size() != m_post.size()) {
    std::ostringstream msg;
    msg << "rmse length mismatch: prediction has " << prediction.size()
        << " entries, signal has " << m_post.size();
    throw std::invalid_argument(msg.str());
  }
  if (prediction.size() == 0) {
    throw std::invalid_argument("rmse needs at least one post period");
  }
  return (prediction - m_post).norm() /
         std::sqrt(static_cast<double>(prediction.size()));
}

std::string BoundsReport::Describe() const {
  std::ostringstream out;
  if (bounded()) {
    out << "all entries within [-1, 1]";
    return out.str();
  }
  out << "sensitivity assumption violated: max |x| = " << max_abs_panel
      << ", max |y| = " << max_abs_target;
  if (first_violation) {
    const auto [row, col] = *first_violation;
    if (row < 0) {
      out << "; first offender y[" << col << "]";
    } else {
      out << "; first offender X[" << row << "," << col << "]";
    }
  }
  return out.str();
}

BoundsReport ValidateBounds(const DonorPanel& panel,
                            const TargetSeries& target) {
  BoundsReport report;
  const Matrix& x = panel.values();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index t = 0; t < x.cols(); ++t) {
      const double a = std::abs(x(i, t));
      report.max_abs_panel = std::max(report.max_abs_panel, a);
      if (a > 1.0 && !report.first_violation) {
        report.first_violation = {static_cast<int>(i), static_cast<int>(t)};
      }
    }
  }
  const Vector& y = target.values();
  for (Eigen::Index t = 0; t < y.size(); ++t) {
    const double a = std::abs(y(t));
    report.max_abs_target = std::max(report.max_abs_target, a);
    if (a > 1.0 && !report.first_violation) {
      report.first_violation = {-1, static_cast<int>(t)};
    }
  }
  report.panel_bounded = report.max_abs_panel <= 1.0;
  report.target_bounded = report.max_abs_target <= 1.0;
  return report;
}

void CheckPaired(const DonorPanel& panel, const TargetSeries& target) {
  if (panel.t0() != target.t0() ||
      panel.num_periods() != target.num_periods()) {
    std::ostringstream msg;
    msg << "panel (T=" << panel.num_periods() << ", t0=" << panel.t0()
        << ") and target (T=" << target.num_periods()
        << ", t0=" << target.t0() << ") are not paired";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace dpsc
