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

#include "dpsc/bounds.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpsc/objective_perturbation.h"

namespace dpsc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ||M_post|| / sqrt(h).
double SignalFactor(const BoundInputs& in) {
  const double h = in.horizon();
  const double norm = in.m_post_norm.value_or(std::sqrt(in.n * h));
  return norm / std::sqrt(h);
}

double PostNoiseFactor(const BoundInputs& in) {
  // sqrt(2)/eps2 vanishes as eps2 -> inf.
  return std::sqrt(in.n * in.sigma2) + std::sqrt(2.0) / in.eps2;
}

double FGap(const BoundInputs& in) {
  return in.f_gap.value_or(RidgeEstimationErrorBound(in));
}

bool SampleSizeOk(const BoundInputs& in) {
  const double ratio = in.t_conf / in.xi;
  return in.t0 >= ratio * ratio * in.k * std::log(static_cast<double>(in.n));
}

struct ObjQuantities {
  double c;
  double eps0;
  double delta_reg;
};

ObjQuantities ResolveObjective(const BoundInputs& in) {
  const double c = in.c.value_or(DefaultC(in.n, in.t0));
  if (in.eps0 && in.delta_reg) return {c, *in.eps0, *in.delta_reg};
  if (std::isinf(in.eps1)) return {c, kInf, 0.0};
  const ObjBranch branch = ComputeBranch(in.lambda, in.eps1, c);
  return {c, in.eps0.value_or(branch.eps0),
          in.delta_reg.value_or(branch.delta_reg)};
}

}  // namespace

void BoundInputs::Validate() const {
  if (n < 1 || t0 < 1 || T <= t0) {
    throw std::invalid_argument("bounds need n >= 1 and 1 <= t0 < T");
  }
  if (!(lambda > 0.0) || !(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw std::invalid_argument("bounds need positive lambda, eps1, eps2");
  }
  if (!(delta >= 0.0) || !(sigma2 >= 0.0) || !(s >= 0.0) || !(psi >= 0.0)) {
    throw std::invalid_argument("bounds need nonnegative delta, sigma2, s, psi");
  }
  if (!(xi > 0.0 && xi < 1.0) || !(t_conf >= 1.0) || k < 1) {
    throw std::invalid_argument("bounds need xi in (0,1), t >= 1, k >= 1");
  }
}

double RidgeEstimationErrorBound(int n, int t0, double lambda, double sigma2,
                                 double s, double xi) {
  const double shrink = lambda / (2.0 * t0);
  const double noise =
      std::sqrt(2.0 * n * sigma2) + std::sqrt(2.0 * n * sigma2 * s * s);
  return (noise * t0 + shrink) / ((1.0 - xi) * t0 + shrink);
}

double RidgeEstimationErrorBound(const BoundInputs& in) {
  return RidgeEstimationErrorBound(in.n, in.t0, in.lambda, in.sigma2, in.s,
                                   in.xi);
}

double ExpectedOutputNoiseNorm(int n, int t0, double lambda, double eps1) {
  return 4.0 * t0 * std::sqrt(8.0 + n) / (lambda * eps1);
}

double ExpectedObjectiveNoiseNorm(int n, int t0, double c, double eps0,
                                  double delta) {
  if (std::isinf(eps0)) return 0.0;
  if (delta > 0.0) {
    // Printed form: sqrt(n t0 4 sqrt(8+n) sqrt(2 log(2/delta) + eps0) / eps0).
    return std::sqrt(n * t0 * 4.0 * std::sqrt(8.0 + n) *
                     std::sqrt(2.0 * std::log(2.0 / delta) + eps0) / eps0);
  }
  return BetaLaplace(n, t0, c, eps0);
}

double ObjectiveCoeffErrorBound(const BoundInputs& in) {
  const auto [c, eps0, delta_reg] = ResolveObjective(in);
  const double reg = in.lambda + delta_reg;
  double err =
      2.0 / reg * ExpectedObjectiveNoiseNorm(in.n, in.t0, c, eps0, in.delta);
  if (delta_reg != 0.0) {
    err += (1.0 / in.lambda + 1.0 / reg) * 2.0 * in.t0 * in.t0 *
           std::sqrt(static_cast<double>(in.n));
  }
  return err;
}

double BoundNonPrivate(const BoundInputs& in) {
  in.Validate();
  return SignalFactor(in) * FGap(in) +
         std::sqrt(in.n * in.sigma2) * std::sqrt(static_cast<double>(in.n)) *
             in.psi;
}

double BoundOutput(const BoundInputs& in) {
  in.Validate();
  const double a = ExpectedOutputNoiseNorm(in.n, in.t0, in.lambda, in.eps1);
  const double root_n = std::sqrt(static_cast<double>(in.n));
  return SignalFactor(in) * (FGap(in) + a) +
         PostNoiseFactor(in) * (root_n * in.psi + a);
}

CorollaryBound BoundOutputClosedForm(const BoundInputs& in) {
  BoundInputs closed = in;
  closed.m_post_norm = std::sqrt(static_cast<double>(in.n * in.horizon()));
  closed.f_gap = RidgeEstimationErrorBound(in);
  return {BoundOutput(closed), SampleSizeOk(in)};
}

double BoundObjective(const BoundInputs& in) {
  in.Validate();
  const double e = ObjectiveCoeffErrorBound(in);
  const double root_n = std::sqrt(static_cast<double>(in.n));
  return SignalFactor(in) * (FGap(in) + e) +
         PostNoiseFactor(in) * (root_n * in.psi + e);
}

CorollaryBound BoundObjectiveClosedForm(const BoundInputs& in) {
  BoundInputs closed = in;
  closed.m_post_norm = std::sqrt(static_cast<double>(in.n * in.horizon()));
  closed.f_gap = RidgeEstimationErrorBound(in);
  return {BoundObjective(closed), SampleSizeOk(in)};
}

PrivacyCost PrivacyCostOut(int n, double eps, double sigma2, double psi) {
  if (n < 1 || !(eps > 0.0)) {
    throw std::invalid_argument("privacy cost needs n >= 1 and eps > 0");
  }
  const double nn = n;
  PrivacyCost cost;
  cost.terms = {
      4.0 * std::sqrt((8.0 + nn) * nn) / eps,
      4.0 * std::sqrt((8.0 + nn) * nn * sigma2) / eps,
      std::sqrt(2.0 * nn) * psi / eps,
      4.0 * std::sqrt(2.0 * (8.0 + nn)) / (eps * eps),
  };
  for (double term : cost.terms) cost.total += term;
  cost.in_regime = eps >= 1.0 / std::sqrt(nn);
  return cost;
}

}  // namespace dpsc
