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

#ifndef DPSC_SRC_PRIVATE_PROJECTION_H_
#define DPSC_SRC_PRIVATE_PROJECTION_H_

#include "dpsc/model.h"
#include "dpsc/noise.h"
#include "dpsc/ridge.h"

namespace dpsc::internal {

// Step shared by both mechanisms: perturb X_post with Frobenius-Laplace noise
// of the given scale and project the private coefficients onto it.
inline Vector PrivateProject(const DonorPanel& panel, const Vector& coeffs,
                             double post_scale, Rng& rng, NoiseMeta& meta) {
  const Matrix w = SampleMatrixLaplace(panel.num_donors(), panel.horizon(),
                                       post_scale, rng);
  meta.post_scale = post_scale;
  meta.post_norm = w.norm();
  return Project(panel.post() + w, coeffs);
}

}  // namespace dpsc::internal

#endif  // DPSC_SRC_PRIVATE_PROJECTION_H_
