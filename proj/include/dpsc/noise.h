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

#ifndef DPSC_NOISE_H_
#define DPSC_NOISE_H_

#include "dpsc/model.h"
#include "dpsc/ridge.h"
#include "dpsc/rng.h"

namespace dpsc {

struct SensitivitySpec {
  int num_donors = 0;
  int t0 = 0;
  double lambda = 0.0;
  int horizon = 0;

  void Validate() const;
};

// l2 sensitivity of the ridge coefficients to replacing one bounded donor
// row: 4 * t0 * sqrt(8 + n) / lambda.
double SensitivityRidgeCoeffs(const SensitivitySpec& spec);
double SensitivityRidgeCoeffs(int num_donors, int t0, double lambda);

// l2 sensitivity of the flattened post-period donor block: 2 * sqrt(horizon).
double SensitivityPostBlock(int horizon);

// Draws v with density proportional to exp(-||v||_2 / scale): a uniform
// direction on the sphere times a Gamma(dim, scale) radius. Note the mean
// radius is dim * scale. scale == 0 yields the zero vector.
Vector SampleHighDimLaplace(int dim, double scale, Rng& rng);

// Matrix analogue with density proportional to exp(-||W||_F / scale),
// sampled as a flattened (rows * cols)-dimensional high-dim Laplace vector
// laid out row by row.
Matrix SampleMatrixLaplace(int rows, int cols, double scale, Rng& rng);

// i.i.d. N(0, stddev^2) coordinates.
Vector SampleGaussianVector(int dim, double stddev, Rng& rng);

// A realised noise draw with its provenance.
struct NoiseDraw {
  Vector values;  // flattened row-major for matrix draws
  double scale = 0.0;
  NoiseFamily family = NoiseFamily::kHighDimLaplace;
  std::uint64_t seed = 0;

  double norm() const { return values.norm(); }
};

}  // namespace dpsc

#endif  // DPSC_NOISE_H_
