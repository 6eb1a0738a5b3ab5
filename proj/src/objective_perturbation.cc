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

#include "dpsc/objective_perturbation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpsc/internal/noise_override.h"
#include "dpsc/noise.h"
#include "private_projection.h"

namespace dpsc {

void DpscObjConfig::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("dpsc_obj: lambda must be positive");
  }
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !std::isfinite(eps1) ||
      !std::isfinite(eps2)) {
    throw std::invalid_argument("dpsc_obj: eps1 and eps2 must be positive");
  }
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("dpsc_obj: delta must lie in [0, 1)");
  }
  if (c && (!(*c > 0.0) || !std::isfinite(*c))) {
    throw std::invalid_argument("dpsc_obj: c must be positive");
  }
}

double BranchThreshold(double lambda, double c) {
  const double r = c / lambda;
  return std::log1p(2.0 * r + r * r);
}

ObjBranch ComputeBranch(double lambda, double eps1, double c) {
  if (!(lambda > 0.0) || !(eps1 > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("branch needs positive lambda, eps1 and c");
  }
  ObjBranch branch;
  const double threshold = BranchThreshold(lambda, c);
  if (eps1 > threshold) {
    branch.eps0 = eps1 - threshold;
    return branch;
  }
  branch.eps0 = eps1 / 2.0;
  branch.delta_reg_raw = c / std::expm1(eps1 / 4.0) - lambda;
  branch.delta_reg = std::max(0.0, branch.delta_reg_raw);
  branch.extra_regularization = true;
  return branch;
}

double BetaLaplace(int num_donors, int t0, double c, double eps0) {
  const double n = num_donors;
  const double by_gradient = 4.0 * t0 * std::sqrt(8.0 + n);
  const double by_eigenvalue = c * std::sqrt(n) + 4.0 * t0;
  return std::min(by_gradient, by_eigenvalue) / eps0;
}

double BetaGaussian(int num_donors, int t0, double eps0, double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("gaussian noise needs delta > 0");
  }
  return 4.0 * t0 * std::sqrt(8.0 + num_donors) *
         std::sqrt(2.0 * std::log(2.0 / delta) + eps0) / eps0;
}

double DefaultC(int num_donors, int t0) {
  return (1.0 + std::sqrt(16.0 * num_donors - 15.0)) * t0;
}

namespace internal {

PrivateOutput DpscObjWithOverride(const DonorPanel& panel,
                                  const TargetSeries& target,
                                  const DpscObjConfig& config, Rng& rng,
                                  const NoiseScaleOverride& scales) {
  config.Validate();
  CheckPaired(panel, target);
  const int n = panel.num_donors();
  const int t0 = panel.t0();
  const double c = config.c.value_or(DefaultC(n, t0));
  const ObjBranch branch = ComputeBranch(config.lambda, config.eps1, c);

  NoiseMeta meta;
  meta.seed = rng.seed();
  meta.eps0 = branch.eps0;
  meta.delta_reg = branch.delta_reg;
  meta.delta_reg_raw = branch.delta_reg_raw;
  meta.delta = config.delta;

  Vector b;
  if (config.delta > 0.0) {
    meta.coeff_family = NoiseFamily::kGaussian;
    meta.beta = BetaGaussian(n, t0, branch.eps0, config.delta);
    meta.coeff_scale = scales.coeff_scale.value_or(meta.beta);
    b = SampleGaussianVector(n, meta.coeff_scale, rng);
  } else {
    meta.coeff_family = NoiseFamily::kHighDimLaplace;
    meta.beta = BetaLaplace(n, t0, c, branch.eps0);
    meta.coeff_scale = scales.coeff_scale.value_or(meta.beta);
    b = SampleHighDimLaplace(n, meta.coeff_scale, rng);
  }
  meta.coeff_norm = b.norm();

  FitResult fit;
  fit.lambda = config.lambda;
  fit.method = FitMethod::kObjectivePerturbed;
  fit.coeffs = SolvePerturbedRidge(panel.pre(), target.pre(),
                                   config.lambda + branch.delta_reg, b);

  const double post_scale = scales.post_scale.value_or(
      SensitivityPostBlock(panel.horizon()) / config.eps2);

  PrivateOutput out;
  out.prediction = PrivateProject(panel, fit.coeffs, post_scale, rng, meta);
  out.budget = {config.eps1 + config.eps2, config.delta};
  out.sensitivity_assumption_holds = ValidateBounds(panel, target).bounded();
  out.noise = meta;
  if (config.release_coeffs) {
    fit.noise_meta = meta;
    out.fit = std::move(fit);
  }
  return out;
}

}  // namespace internal

PrivateOutput DpscObj(const DonorPanel& panel, const TargetSeries& target,
                      const DpscObjConfig& config, Rng& rng) {
  return internal::DpscObjWithOverride(panel, target, config, rng, {});
}

}  // namespace dpsc
