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

// Private synthetic control by objective perturbation.
//
// The learning step minimises, exactly,
//
//   (1/T0) ||y_pre - X_pre^T f||^2 + ((lambda + Delta) / (2 T0)) ||f||^2
//       + (1/T0) b^T f
//
// where b is high-dimensional Laplace (delta = 0) or spherical Gaussian
// (delta > 0) noise. The budget eps1 is split between the noise and the
// Jacobian term depending on whether eps1 clears log((1 + c/lambda)^2); when it
// does not, extra regularisation Delta is added. The projection step is the
// same as for output perturbation. Total guarantee: (eps1 + eps2, delta).

#ifndef DPSC_OBJECTIVE_PERTURBATION_H_
#define DPSC_OBJECTIVE_PERTURBATION_H_

#include <optional>

#include "dpsc/mechanism.h"
#include "dpsc/rng.h"

namespace dpsc {

struct DpscObjConfig {
  double lambda = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
  // Bound on the largest absolute eigenvalue of the neighbouring Gram
  // difference. Defaults to DefaultC(n, t0).
  std::optional<double> c;
  bool release_coeffs = false;

  void Validate() const;
};

struct ObjBranch {
  double eps0 = 0.0;
  // Extra regularisation actually applied (never negative).
  double delta_reg = 0.0;
  // The unfloored value of c / (e^{eps1/4} - 1) - lambda; equals delta_reg
  // whenever that is nonnegative, 0 in the first branch.
  double delta_reg_raw = 0.0;
  bool extra_regularization = false;
};

// log(1 + 2c/lambda + c^2/lambda^2), the eps1 threshold between branches.
double BranchThreshold(double lambda, double c);

// eps1 strictly above the threshold: eps0 = eps1 - threshold, Delta = 0.
// Otherwise eps0 = eps1 / 2 and Delta = max(0, c / (e^{eps1/4} - 1) - lambda).
ObjBranch ComputeBranch(double lambda, double eps1, double c);

// min{4 t0 sqrt(8+n), c sqrt(n) + 4 t0} / eps0.
double BetaLaplace(int num_donors, int t0, double c, double eps0);

// 4 t0 sqrt(8+n) sqrt(2 log(2/delta) + eps0) / eps0.
double BetaGaussian(int num_donors, int t0, double eps0, double delta);

// (1 + sqrt(16 n - 15)) * t0, usable when nothing beyond n and t0 is known.
double DefaultC(int num_donors, int t0);

PrivateOutput DpscObj(const DonorPanel& panel, const TargetSeries& target,
                      const DpscObjConfig& config, Rng& rng);

}  // namespace dpsc

#endif  // DPSC_OBJECTIVE_PERTURBATION_H_
