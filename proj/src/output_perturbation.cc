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

#include "dpsc/output_perturbation.h"

#include <cmath>
#include <stdexcept>

#include "dpsc/internal/noise_override.h"
#include "dpsc/noise.h"
#include "private_projection.h"

namespace dpsc {

void DpscOutConfig::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("dpsc_out: lambda must be positive");
  }
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !std::isfinite(eps1) ||
      !std::isfinite(eps2)) {
    throw std::invalid_argument("dpsc_out: eps1 and eps2 must be positive");
  }
}

double OutputCoeffScale(int num_donors, int t0, double lambda, double eps1) {
  return SensitivityRidgeCoeffs(num_donors, t0, lambda) / eps1;
}

double PostBlockScale(int horizon, double eps2) {
  return SensitivityPostBlock(horizon) / eps2;
}

namespace internal {

PrivateOutput DpscOutWithOverride(const DonorPanel& panel,
                                  const TargetSeries& target,
                                  const DpscOutConfig& config, Rng& rng,
                                  const NoiseScaleOverride& scales) {
  config.Validate();
  CheckPaired(panel, target);
  const int n = panel.num_donors();

  NoiseMeta meta;
  meta.seed = rng.seed();
  meta.coeff_family = NoiseFamily::kHighDimLaplace;
  meta.coeff_scale = scales.coeff_scale.value_or(
      OutputCoeffScale(n, panel.t0(), config.lambda, config.eps1));
  const double post_scale = scales.post_scale.value_or(
      PostBlockScale(panel.horizon(), config.eps2));

  FitResult fit = RidgeFit(panel.pre(), target.pre(), config.lambda);
  const Vector v = SampleHighDimLaplace(n, meta.coeff_scale, rng);
  meta.coeff_norm = v.norm();
  fit.coeffs += v;
  fit.method = FitMethod::kOutputPerturbed;

  PrivateOutput out;
  out.prediction = PrivateProject(panel, fit.coeffs, post_scale, rng, meta);
  out.budget = {config.eps1 + config.eps2, 0.0};
  out.sensitivity_assumption_holds = ValidateBounds(panel, target).bounded();
  out.noise = meta;
  if (config.release_coeffs) {
    fit.noise_meta = meta;
    out.fit = std::move(fit);
  }
  return out;
}

}  // namespace internal

PrivateOutput DpscOut(const DonorPanel& panel, const TargetSeries& target,
                      const DpscOutConfig& config, Rng& rng) {
  return internal::DpscOutWithOverride(panel, target, config, rng, {});
}

}  // namespace dpsc
