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

#ifndef DPSC_MECHANISM_H_
#define DPSC_MECHANISM_H_

#include <optional>

#include "dpsc/model.h"
#include "dpsc/ridge.h"

namespace dpsc {

// Total guarantee of one mechanism invocation: (epsilon, delta)-DP with
// respect to replacing one donor row.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Output of a private synthetic-control mechanism.
struct PrivateOutput {
  Vector prediction;
  // The private coefficients; present only when the caller asked for them.
  // Releasing them costs no additional budget.
  std::optional<FitResult> fit;
  NoiseMeta noise;
  PrivacyBudget budget;
  // False when the data violate |x| <= 1, in which case the calibrated
  // noise does not deliver the stated guarantee.
  bool sensitivity_assumption_holds = true;
};

}  // namespace dpsc

#endif  // DPSC_MECHANISM_H_
