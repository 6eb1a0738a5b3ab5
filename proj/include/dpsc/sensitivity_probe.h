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

// Empirical checks of the ridge-coefficient sensitivity: a randomized probe
// over bounded neighbouring databases (an upper-bound sanity check) and the
// explicit neighbouring pair whose gap grows like sqrt(n).

#ifndef DPSC_SENSITIVITY_PROBE_H_
#define DPSC_SENSITIVITY_PROBE_H_

#include "dpsc/execution.h"
#include "dpsc/model.h"
#include "dpsc/rng.h"

namespace dpsc {

// ||f(X) - f(X')||_2 for two pre-period panels sharing the target.
double RidgeNeighborGap(const Eigen::Ref<const Matrix>& x_pre,
                        const Eigen::Ref<const Matrix>& neighbor_pre,
                        const Vector& y_pre, double lambda);

struct ProbeResult {
  double max_gap = 0.0;
  int argmax_trial = -1;
  int trials = 0;
};

// For each trial: draws an n x t0 panel and a target with entries uniform in
// [-1, 1], replaces one random donor row with a fresh bounded row, and
// records the coefficient gap. Trial streams derive from one seed taken from
// `rng`, so serial and parallel runs agree exactly.
ProbeResult EmpiricalSensitivityProbe(int num_donors, int t0, double lambda,
                                      int trials, Rng& rng,
                                      Execution exec = Execution::kParallel);

// The neighbouring pair with t0 = n, y = 1, donors 2..n constant 1/n and
// donor 1 all ones (neighbor: all zeros). Intended for the effective
// regulariser rho = 1, i.e. lambda = kLowerBoundLambda.
struct LowerBoundFixture {
  DonorPanel panel;
  DonorPanel neighbor;
  TargetSeries target;
  Vector expected;           // closed-form coefficients on `panel`
  Vector expected_neighbor;  // closed-form coefficients on `neighbor`

  double ExpectedGap() const { return (expected - expected_neighbor).norm(); }
};

inline constexpr double kLowerBoundLambda = 2.0;

// `horizon` post periods (all entries equal to the pre-period pattern) are
// appended so the fixture is a complete panel.
LowerBoundFixture MakeLowerBoundFixture(int n, int horizon = 1);

}  // namespace dpsc

#endif  // DPSC_SENSITIVITY_PROBE_H_
