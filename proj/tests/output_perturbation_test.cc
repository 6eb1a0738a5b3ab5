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

#include "dpsc/output_perturbation.h"

#include <cmath>

#include "dpsc/datagen.h"
#include "dpsc/internal/noise_override.h"
#include "dpsc/noise.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpsc {
namespace {

struct Instance {
  DonorPanel panel;
  TargetSeries target;
};

Instance RandomInstance(Rng& rng, int n, int t0, int horizon) {
  return {DonorPanel(testing::UniformMatrix(n, t0 + horizon, rng), t0),
          TargetSeries(testing::UniformVector(t0 + horizon, rng), t0)};
}

TEST(DpscOutTest, ZeroNoiseEqualsNonPrivate) {
  Rng data_rng(1);
  for (int k = 0; k < 10; ++k) {
    const Instance inst = RandomInstance(data_rng, 3 + k % 4, 6 + k, 2);
    Rng rng(100 + k);
    const PrivateOutput out = internal::DpscOutWithOverride(
        inst.panel, inst.target, {2.0, 1.0, 1.0, true}, rng,
        internal::NoiseScaleOverride::Zero());
    const ScPrediction ref = ScFitPredict(inst.panel, inst.target, 2.0);
    EXPECT_LE((out.prediction - ref.prediction).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_EQ(out.noise.coeff_norm, 0.0);
    EXPECT_EQ(out.noise.post_norm, 0.0);
  }
}

TEST(DpscOutTest, FixedSeedIsBitIdentical) {
  Rng data_rng(2);
  const Instance inst = RandomInstance(data_rng, 5, 8, 3);
  Rng a(7), b(7);
  const DpscOutConfig cfg{1.0, 2.0, 3.0, true};
  const PrivateOutput x = DpscOut(inst.panel, inst.target, cfg, a);
  const PrivateOutput y = DpscOut(inst.panel, inst.target, cfg, b);
  EXPECT_EQ(x.prediction, y.prediction);
  EXPECT_EQ(x.fit->coeffs, y.fit->coeffs);
}

TEST(DpscOutTest, ReportsCalibrationAndBudget) {
  Rng data_rng(3);
  const Instance inst = RandomInstance(data_rng, 4, 5, 3);
  Rng rng(4);
  const PrivateOutput out =
      DpscOut(inst.panel, inst.target, {10.0, 2.0, 4.0, false}, rng);
  EXPECT_FALSE(out.fit.has_value());
  EXPECT_DOUBLE_EQ(out.budget.epsilon, 6.0);
  EXPECT_EQ(out.budget.delta, 0.0);
  EXPECT_NEAR(out.noise.coeff_scale, 4.0 * 5.0 * std::sqrt(12.0) / 20.0,
              1e-12);
  EXPECT_NEAR(out.noise.post_scale, 2.0 * std::sqrt(3.0) / 4.0, 1e-12);
  EXPECT_EQ(out.noise.coeff_family, NoiseFamily::kHighDimLaplace);
  EXPECT_TRUE(out.sensitivity_assumption_holds);
}

TEST(DpscOutTest, NoiseDrawOrder) {
  // v is drawn first, then W, both from the caller's stream.
  Rng data_rng(5);
  const Instance inst = RandomInstance(data_rng, 4, 6, 2);
  const DpscOutConfig cfg{3.0, 1.5, 2.5, true};
  Rng rng(11);
  const PrivateOutput out = DpscOut(inst.panel, inst.target, cfg, rng);

  Rng replay(11);
  const Vector v = SampleHighDimLaplace(
      4, OutputCoeffScale(4, 6, cfg.lambda, cfg.eps1), replay);
  const Matrix w =
      SampleMatrixLaplace(4, 2, PostBlockScale(2, cfg.eps2), replay);
  const Vector f = RidgeFit(inst.panel.pre(), inst.target.pre(), 3.0).coeffs + v;
  EXPECT_LE((out.fit->coeffs - f).norm(), 1e-12);
  EXPECT_LE((out.prediction - (inst.panel.post() + w).transpose() * f).norm(),
            1e-12);
}

TEST(DpscOutTest, MonteCarloMeanIsUnbiased) {
  const GeneratedDataset d = GenerateLinearPanel(10, 10, 13, {}, 6);
  const Vector expected = ScFitPredict(d.panel, d.target, 10.0).prediction;
  const int reps = 500;
  Matrix draws(reps, 3);
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::Derive(6, {static_cast<std::uint64_t>(r)});
    draws.row(r) = DpscOut(d.panel, d.target, {10.0, 50.0, 50.0, false}, rng)
                       .prediction.transpose();
  }
  for (int t = 0; t < 3; ++t) {
    const double mean = draws.col(t).mean();
    const double sd = std::sqrt((draws.col(t).array() - mean).square().sum() /
                                (reps - 1));
    EXPECT_LE(std::abs(mean - expected(t)), 3.0 * sd / std::sqrt(reps))
        << "coordinate " << t;
  }
}

TEST(DpscOutTest, FlagsUnboundedData) {
  const GeneratedDataset d = GenerateLinearPanel(4, 5, 8, {}, 8);
  Rng rng(9);
  EXPECT_FALSE(DpscOut(d.panel, d.target, {5.0, 1.0, 1.0, false}, rng)
                   .sensitivity_assumption_holds);
}

TEST(DpscOutTest, RejectsInvalidConfig) {
  Rng data_rng(10);
  const Instance inst = RandomInstance(data_rng, 3, 4, 1);
  Rng rng(1);
  EXPECT_THROW(DpscOut(inst.panel, inst.target, {0.0, 1.0, 1.0, false}, rng),
               std::invalid_argument);
  EXPECT_THROW(DpscOut(inst.panel, inst.target, {1.0, 0.0, 1.0, false}, rng),
               std::invalid_argument);
  EXPECT_THROW(DpscOut(inst.panel, inst.target, {1.0, 1.0, -1.0, false}, rng),
               std::invalid_argument);
}

}  // namespace
}  // namespace dpsc
