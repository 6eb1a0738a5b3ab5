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

#include "dpsc/datagen.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dpsc {
namespace {

// Standard normal mass of [a, b], evaluated on the tail side for accuracy.
double NormalMass(double a, double b) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  if (a >= 0.0) {
    return 0.5 * (std::erfc(a * kInvSqrt2) - std::erfc(b * kInvSqrt2));
  }
  if (b <= 0.0) {
    return 0.5 * (std::erfc(-b * kInvSqrt2) - std::erfc(-a * kInvSqrt2));
  }
  return 1.0 - 0.5 * (std::erfc(-a * kInvSqrt2) + std::erfc(b * kInvSqrt2));
}

}  // namespace

double TruncatedGaussian(double mean, double var, double lo, double hi,
                         Rng& rng) {
  if (!(lo < hi)) throw std::invalid_argument("truncation needs lo < hi");
  if (!(var > 0.0)) throw std::invalid_argument("truncation needs var > 0");
  const double sd = std::sqrt(var);
  const double a = (lo - mean) / sd;
  const double b = (hi - mean) / sd;
  const double mass = NormalMass(a, b);
  if (!(mass >= 1e-12)) {
    throw std::domain_error("truncation interval has negligible mass");
  }

  // Closest point of [a, b] to the mode, in standard units.
  const double nearest = a > 0.0 ? a : (b < 0.0 ? b : 0.0);
  const double uniform_acceptance = mass * std::sqrt(2.0 * std::numbers::pi) /
                                    ((b - a) * std::exp(-0.5 * nearest * nearest));

  auto& engine = rng.engine();
  if (uniform_acceptance > mass) {
    std::uniform_real_distribution<double> proposal(a, b);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (;;) {
      const double z = proposal(engine);
      const double ratio = std::exp(-0.5 * (z * z - nearest * nearest));
      if (coin(engine) <= ratio) return mean + sd * z;
    }
  }
  std::normal_distribution<double> proposal(mean, sd);
  for (;;) {
    const double x = proposal(engine);
    if (x >= lo && x <= hi) return x;
  }
}

GeneratedDataset GenerateLinearPanel(int n, int t0, int T,
                                     const LatentModelSpec& spec,
                                     std::uint64_t seed) {
  spec.Validate();
  if (n < 1) throw std::invalid_argument("generator needs n >= 1");
  if (t0 < 1 || t0 >= T) {
    throw std::invalid_argument("generator needs 1 <= t0 < T");
  }
  Rng rng(seed);

  Vector theta(n);
  for (int i = 0; i < n; ++i) {
    theta(i) = TruncatedGaussian(spec.theta_mean, spec.theta_var,
                                 spec.theta_lo, spec.theta_hi, rng);
  }
  double theta0;
  if (spec.target_theta) {
    theta0 = *spec.target_theta;
  } else if (spec.target_is_donor_mean) {
    theta0 = theta.mean();
  } else {
    theta0 = TruncatedGaussian(spec.theta_mean, spec.theta_var, spec.theta_lo,
                               spec.theta_hi, rng);
  }

  auto draw_noise = [&]() {
    if (spec.noise_var == 0.0) return 0.0;
    return TruncatedGaussian(0.0, spec.noise_var, -spec.noise_support,
                             spec.noise_support, rng);
  };

  Matrix signal(n, T);
  Matrix noise(n, T);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < T; ++t) {
      signal(i, t) = theta(i) * (t + 1);
      noise(i, t) = draw_noise();
    }
  }
  Vector m(T);
  Vector z(T);
  for (int t = 0; t < T; ++t) {
    m(t) = theta0 * (t + 1);
    z(t) = draw_noise();
  }

  Matrix values = signal + noise;
  Vector y = m + z;
  return GeneratedDataset{
      DonorPanel(std::move(values), t0,
                 PanelTruth{std::move(signal), std::move(noise)}),
      TargetSeries(std::move(y), t0, SeriesTruth{std::move(m), std::move(z)}),
      std::move(theta),
      theta0,
      spec,
      seed,
  };
}

DonorPanel GenerateBoundedPanel(int n, int t0, int T, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generator needs n >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix values(n, T);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values.data()[i] = unit(rng.engine());
  }
  return DonorPanel(std::move(values), t0);
}

}  // namespace dpsc
