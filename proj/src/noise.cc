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

#include "dpsc/noise.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dpsc {
namespace {

void CheckScale(double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("noise scale must be finite and nonnegative");
  }
}

void CheckDim(int dim) {
  if (dim < 1) throw std::invalid_argument("noise dimension must be >= 1");
}

}  // namespace

void SensitivitySpec::Validate() const {
  if (num_donors < 1 || t0 < 1 || horizon < 1 || !(lambda > 0.0)) {
    throw std::invalid_argument(
        "sensitivity needs positive n, t0, horizon and lambda");
  }
}

double SensitivityRidgeCoeffs(const SensitivitySpec& spec) {
  spec.Validate();
  return SensitivityRidgeCoeffs(spec.num_donors, spec.t0, spec.lambda);
}

double SensitivityRidgeCoeffs(int num_donors, int t0, double lambda) {
  return 4.0 * t0 * std::sqrt(8.0 + num_donors) / lambda;
}

double SensitivityPostBlock(int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return 2.0 * std::sqrt(static_cast<double>(horizon));
}

Vector SampleHighDimLaplace(int dim, double scale, Rng& rng) {
  CheckDim(dim);
  CheckScale(scale);
  if (scale == 0.0) return Vector::Zero(dim);

  std::normal_distribution<double> normal(0.0, 1.0);
  Vector direction(dim);
  double norm = 0.0;
  // A zero Gaussian vector has probability zero, but guard the division.
  do {
    for (int i = 0; i < dim; ++i) direction(i) = normal(rng.engine());
    norm = direction.norm();
  } while (norm == 0.0);

  std::gamma_distribution<double> radius(static_cast<double>(dim), scale);
  return direction * (radius(rng.engine()) / norm);
}

Matrix SampleMatrixLaplace(int rows, int cols, double scale, Rng& rng) {
  CheckDim(rows);
  CheckDim(cols);
  const Vector flat = SampleHighDimLaplace(rows * cols, scale, rng);
  return Eigen::Map<const Matrix>(flat.data(), rows, cols);
}

Vector SampleGaussianVector(int dim, double stddev, Rng& rng) {
  CheckDim(dim);
  CheckScale(stddev);
  if (stddev == 0.0) return Vector::Zero(dim);
  std::normal_distribution<double> normal(0.0, stddev);
  Vector out(dim);
  for (int i = 0; i < dim; ++i) out(i) = normal(rng.engine());
  return out;
}

}  // namespace dpsc
