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

// Test-only entry points that replace the calibrated noise scales. Not part
// of the public API and never reachable from the command line: overriding a
// scale voids the privacy guarantee.

#ifndef DPSC_INTERNAL_NOISE_OVERRIDE_H_
#define DPSC_INTERNAL_NOISE_OVERRIDE_H_

#include <optional>

#include "dpsc/objective_perturbation.h"
#include "dpsc/output_perturbation.h"

namespace dpsc::internal {

struct NoiseScaleOverride {
  std::optional<double> coeff_scale;  // a (output) or beta (objective)
  std::optional<double> post_scale;   // b

  static NoiseScaleOverride Zero() { return {0.0, 0.0}; }
};

PrivateOutput DpscOutWithOverride(const DonorPanel& panel,
                                  const TargetSeries& target,
                                  const DpscOutConfig& config, Rng& rng,
                                  const NoiseScaleOverride& scales);

PrivateOutput DpscObjWithOverride(const DonorPanel& panel,
                                  const TargetSeries& target,
                                  const DpscObjConfig& config, Rng& rng,
                                  const NoiseScaleOverride& scales);

}  // namespace dpsc::internal

#endif  // DPSC_INTERNAL_NOISE_OVERRIDE_H_
