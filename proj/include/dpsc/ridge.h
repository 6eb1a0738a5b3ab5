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

// Vertical ridge regression for synthetic control.
//
// Each pre-intervention period t contributes the donor column x_t as a feature
// vector with label y_t. The loss is
//
//   J(f) = (1/T0) ||y_pre - X_pre^T f||^2 + (lambda / (2 T0)) ||f||^2
//
// whose minimiser solves (2 X_pre X_pre^T + lambda I) f = 2 X_pre y_pre, i.e.
// a ridge fit with effective regulariser rho = lambda / 2.

#ifndef DPSC_RIDGE_H_
#define DPSC_RIDGE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "dpsc/model.h"

namespace dpsc {

enum class FitMethod { kNonPrivate, kOutputPerturbed, kObjectivePerturbed };

std::string ToString(FitMethod method);

enum class NoiseFamily { kHighDimLaplace, kGaussian };

std::string ToString(NoiseFamily family);

// What the private mechanisms drew, for reporting and auditing.
struct NoiseMeta {
  // Coefficient noise (v for output perturbation, b for objective).
  NoiseFamily coeff_family = NoiseFamily::kHighDimLaplace;
  double coeff_scale = 0.0;
  double coeff_norm = 0.0;
  // Post-period donor noise W.
  double post_scale = 0.0;
  double post_norm = 0.0;
  // Objective-perturbation branch quantities; zero for output perturbation.
  double eps0 = 0.0;
  double delta_reg = 0.0;
  double delta_reg_raw = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
};

struct FitResult {
  Vector coeffs;
  double lambda = 0.0;
  FitMethod method = FitMethod::kNonPrivate;
  std::optional<NoiseMeta> noise_meta;
};

// Raised when lambda = 0 and X_pre X_pre^T is singular.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(int rank, int dimension);
  int rank() const { return rank_; }
  int dimension() const { return dimension_; }

 private:
  int rank_;
  int dimension_;
};

// Closed-form minimiser of J. Requires lambda >= 0; lambda = 0 is accepted
// only when the Gram matrix has full rank.
FitResult RidgeFit(const Eigen::Ref<const Matrix>& x_pre, const Vector& y_pre,
                   double lambda);

// Minimiser of J(f) + (delta_reg / (2 T0)) ||f||^2 + (1/T0) b^T f, i.e.
// (2 X X^T + (lambda + delta_reg) I)^{-1} (2 X y - b).
Vector SolvePerturbedRidge(const Eigen::Ref<const Matrix>& x_pre,
                           const Vector& y_pre, double regularizer,
                           const Vector& linear_term);

// J at f, and its analytic gradient.
double RidgeObjective(const Eigen::Ref<const Matrix>& x_pre,
                      const Vector& y_pre, double lambda, const Vector& f);
Vector RidgeGradient(const Eigen::Ref<const Matrix>& x_pre,
                     const Vector& y_pre, double lambda, const Vector& f);

// X_post^T f.
Vector Project(const Eigen::Ref<const Matrix>& x_post, const Vector& coeffs);
Vector Project(const Eigen::Ref<const Matrix>& x_post, const FitResult& fit);

struct ScPrediction {
  FitResult fit;
  Vector prediction;
};

// Non-private synthetic control: split, fit, project.
ScPrediction ScFitPredict(const DonorPanel& panel, const TargetSeries& target,
                          double lambda);

}  // namespace dpsc

#endif  // DPSC_RIDGE_H_
