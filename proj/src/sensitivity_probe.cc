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

#include "dpsc/sensitivity_probe.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "dpsc/ridge.h"

namespace dpsc {

double RidgeNeighborGap(const Eigen::Ref<const Matrix>& x_pre,
                        const Eigen::Ref<const Matrix>& neighbor_pre,
                        const Vector& y_pre, double lambda) {
  if (x_pre.rows() != neighbor_pre.rows() ||
      x_pre.cols() != neighbor_pre.cols()) {
    throw std::invalid_argument("neighbouring panels must share a shape");
  }
  const Vector f = RidgeFit(x_pre, y_pre, lambda).coeffs;
  const Vector f_prime = RidgeFit(neighbor_pre, y_pre, lambda).coeffs;
  return (f - f_prime).norm();
}

namespace {

double ProbeTrial(int n, int t0, double lambda, Rng rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto& engine = rng.engine();
  Matrix x(n, t0);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = unit(engine);
  Vector y(t0);
  for (int t = 0; t < t0; ++t) y(t) = unit(engine);

  Matrix neighbor = x;
  const int row = std::uniform_int_distribution<int>(0, n - 1)(engine);
  for (int t = 0; t < t0; ++t) neighbor(row, t) = unit(engine);
  return RidgeNeighborGap(x, neighbor, y, lambda);
}

}  // namespace

ProbeResult EmpiricalSensitivityProbe(int num_donors, int t0, double lambda,
                                      int trials, Rng& rng, Execution exec) {
  if (trials < 1) throw std::invalid_argument("probe needs trials >= 1");
  if (num_donors < 1 || t0 < 1 || !(lambda > 0.0)) {
    throw std::invalid_argument("probe needs n, t0 >= 1 and lambda > 0");
  }
  const std::uint64_t base = rng.NextSeed();
  std::vector<double> gaps(trials);

  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < trials; ++k) {
      gaps[k] = ProbeTrial(num_donors, t0, lambda,
                           Rng::Derive(base, {static_cast<std::uint64_t>(k)}));
    }
  } else {
    for (int k = 0; k < trials; ++k) {
      gaps[k] = ProbeTrial(num_donors, t0, lambda,
                           Rng::Derive(base, {static_cast<std::uint64_t>(k)}));
    }
  }

  ProbeResult result;
  result.trials = trials;
  for (int k = 0; k < trials; ++k) {
    if (gaps[k] > result.max_gap || result.argmax_trial < 0) {
      result.max_gap = gaps[k];
      result.argmax_trial = k;
    }
  }
  return result;
}

LowerBoundFixture MakeLowerBoundFixture(int n, int horizon) {
  if (n < 2) throw std::invalid_argument("lower-bound fixture needs n >= 2");
  if (horizon < 1) throw std::invalid_argument("fixture horizon must be >= 1");
  const int periods = n + horizon;
  const double inv_n = 1.0 / n;

  Matrix x = Matrix::Constant(n, periods, inv_n);
  x.row(0).setOnes();
  Matrix x_prime = x;
  x_prime.row(0).setZero();

  const double nn = static_cast<double>(n);
  const double denom = nn * nn + 2.0 * nn - 1.0;
  Vector expected = Vector::Constant(n, nn / denom);
  expected(0) = nn * nn / denom;
  Vector expected_neighbor = Vector::Constant(n, nn / (2.0 * nn - 1.0));
  expected_neighbor(0) = 0.0;

  return LowerBoundFixture{
      DonorPanel(std::move(x), n),
      DonorPanel(std::move(x_prime), n),
      TargetSeries(Vector::Ones(periods), n),
      std::move(expected),
      std::move(expected_neighbor),
  };
}

}  // namespace dpsc
