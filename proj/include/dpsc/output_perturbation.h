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

// Private synthetic control by output perturbation.
//
//   1. f_reg = ridge fit on (X_pre, y_pre);  f_out = f_reg + v, where v has
//      density ~ exp(-||v|| / a) and a = 4 t0 sqrt(8 + n) / (lambda eps1).
//   2. X~_post = X_post + W, W ~ exp(-||W||_F / b), b = 2 sqrt(T - t0) / eps2.
//   3. Release y_out = X~_post^T f_out.
//
// The whole procedure is (eps1 + eps2, 0)-DP.

#ifndef DPSC_OUTPUT_PERTURBATION_H_
#define DPSC_OUTPUT_PERTURBATION_H_

#include "dpsc/mechanism.h"
#include "dpsc/rng.h"

namespace dpsc {

struct DpscOutConfig {
  double lambda = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  bool release_coeffs = false;

  void Validate() const;
};

// Scale of v for the given panel geometry.
double OutputCoeffScale(int num_donors, int t0, double lambda, double eps1);
// Scale of W.
double PostBlockScale(int horizon, double eps2);

PrivateOutput DpscOut(const DonorPanel& panel, const TargetSeries& target,
                      const DpscOutConfig& config, Rng& rng);

}  // namespace dpsc

#endif  // DPSC_OUTPUT_PERTURBATION_H_
