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

// Theoretical post-intervention RMSE bounds, for overlaying on measured
// sweeps. Every function evaluates a closed-form expression; nothing here
// samples or fits.
//
// Notation shared by the bounds:
//   h      = T - t0 (post-period horizon)
//   a      = 4 t0 sqrt(8 + n) / (lambda eps1)   expected ||v|| as printed
//   P      = sqrt(n sigma^2) + sqrt(2) / eps2   post-block noise factor
//   f_gap  = E||f_reg - f||                    (measured or the closed form
//                                               of RidgeEstimationErrorBound)
//   E||b|| = objective noise norm (Laplace or Gaussian form)
//   I      = 1{Delta != 0} (1/lambda + 1/(lambda + Delta)) 2 t0^2 sqrt(n)

#ifndef DPSC_BOUNDS_H_
#define DPSC_BOUNDS_H_

#include <array>
#include <optional>

namespace dpsc {

struct BoundInputs {
  int n = 0;
  int t0 = 0;
  int T = 0;
  double lambda = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
  double sigma2 = 0.0;
  double s = 1.0;
  double psi = 1.0;
  // Spectral norm of M_post. Unset: the sqrt(n h) Frobenius fallback.
  std::optional<double> m_post_norm;
  // E||f_reg - f||. Unset: RidgeEstimationErrorBound.
  std::optional<double> f_gap;
  double xi = 0.5;
  double t_conf = 1.0;
  int k = 1;
  // Objective-perturbation quantities. Unset values are derived from
  // (lambda, eps1, c) exactly as the mechanism derives them.
  std::optional<double> c;
  std::optional<double> eps0;
  std::optional<double> delta_reg;

  int horizon() const { return T - t0; }
  void Validate() const;
};

struct CorollaryBound {
  double value = 0.0;
  // t0 >= (t/xi)^2 k log n with the unspecified absolute constant set to 1.
  // Advisory only.
  bool sample_size_ok = false;
};

// ((sqrt(2 n s2) + sqrt(2 n s2 s^2)) t0 + lambda/(2 t0)) /
//     ((1 - xi) t0 + lambda/(2 t0)).
double RidgeEstimationErrorBound(int n, int t0, double lambda, double sigma2,
                                 double s, double xi);
double RidgeEstimationErrorBound(const BoundInputs& in);

// a as printed for the bounds. The sampler's realised mean radius is n * a.
double ExpectedOutputNoiseNorm(int n, int t0, double lambda, double eps1);

// E||b|| for the objective mechanism.
double ExpectedObjectiveNoiseNorm(int n, int t0, double c, double eps0,
                                  double delta);

// 2/(lambda+Delta) E||b|| + I.
double ObjectiveCoeffErrorBound(const BoundInputs& in);

// (||M_post|| / sqrt(h)) f_gap + sqrt(n sigma^2) sqrt(n) psi.
double BoundNonPrivate(const BoundInputs& in);

// (||M_post|| / sqrt(h)) (f_gap + a) + P (sqrt(n) psi + a).
double BoundOutput(const BoundInputs& in);

// Output bound with sqrt(n) for ||M_post||/sqrt(h) and the closed-form f_gap.
CorollaryBound BoundOutputClosedForm(const BoundInputs& in);

// (||M_post|| / sqrt(h)) (f_gap + e) + P (sqrt(n) psi + e), e = the
// objective coefficient error bound.
double BoundObjective(const BoundInputs& in);

CorollaryBound BoundObjectiveClosedForm(const BoundInputs& in);

// The four privacy-induced terms of the output-perturbation bound with
// lambda = t0, eps1 = eps2 = eps and ||M_post||/sqrt(h) <= sqrt(n):
//   4 sqrt((8+n) n)/eps, 4 sqrt((8+n) n s2)/eps, sqrt(2n) psi/eps,
//   4 sqrt(2 (8+n))/eps^2.
struct PrivacyCost {
  std::array<double, 4> terms{};
  double total = 0.0;
  // eps >= 1/sqrt(n), where the total is O(n / eps).
  bool in_regime = true;
};

PrivacyCost PrivacyCostOut(int n, double eps, double sigma2, double psi);

}  // namespace dpsc

#endif  // DPSC_BOUNDS_H_
