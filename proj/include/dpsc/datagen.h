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

#ifndef DPSC_DATAGEN_H_
#define DPSC_DATAGEN_H_

#include <cstdint>

#include "dpsc/model.h"
#include "dpsc/rng.h"

namespace dpsc {

// Draw from N(mean, var) conditioned on [lo, hi], by rejection. The proposal
// is either the untruncated normal or a uniform on [lo, hi], whichever
// accepts more often. Throws std::domain_error when the interval carries
// less than 1e-12 of the normal's mass.
double TruncatedGaussian(double mean, double var, double lo, double hi,
                         Rng& rng);

struct GeneratedDataset {
  DonorPanel panel;
  TargetSeries target;
  Vector donor_theta;
  double target_theta = 0.0;
  LatentModelSpec spec;
  std::uint64_t seed = 0;
};

// Linear latent model: M_{i,t} = theta_i t, m_t = theta_0 t (t = 1..T),
// Z and z i.i.d. truncated Gaussian noise, X = M + Z, y = m + z.
GeneratedDataset GenerateLinearPanel(int n, int t0, int T,
                                     const LatentModelSpec& spec,
                                     std::uint64_t seed);

// Horizon used throughout the experiments: T = t0 + 3.
inline constexpr int kDefaultHorizon = 3;

// i.i.d. uniform entries in [-1, 1].
DonorPanel GenerateBoundedPanel(int n, int t0, int T, std::uint64_t seed);

}  // namespace dpsc

#endif  // DPSC_DATAGEN_H_
