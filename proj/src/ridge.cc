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

#include "dpsc/ridge.h"

#include <cmath>
#include <sstream>

namespace dpsc {
namespace {

void CheckShapes(const Eigen::Ref<const Matrix>& x_pre, const Vector& y_pre) {
  if (x_pre.cols() != y_pre.size()) {
    std::ostringstream msg;
    msg << "X_pre has " << x_pre.cols() << " periods but y_pre has "
        << y_pre.size();
    throw std::invalid_argument(msg.str());
  }
}

// 2 X X^T, lower triangle filled via a symmetric rank update.
Eigen::MatrixXd TwiceGram(const Eigen::Ref<const Matrix>& x_pre) {
  const Eigen::Index n = x_pre.rows();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x_pre, 2.0);
  return gram.selfadjointView<Eigen::Lower>();
}

}  // namespace

std::string ToString(FitMethod method) {
  switch (method) {
    case FitMethod::kNonPrivate:
      return "nonprivate";
    case FitMethod::kOutputPerturbed:
      return "dpsc_out";
    case FitMethod::kObjectivePerturbed:
      return "dpsc_obj";
  }
  return "unknown";
}

std::string ToString(NoiseFamily family) {
  return family == NoiseFamily::kGaussian ? "gaussian" : "highdim_laplace";
}

RankDeficientError::RankDeficientError(int rank, int dimension)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "X_pre X_pre^T is rank deficient (rank " << rank << " < n = "
            << dimension << "); ridge fit with lambda = 0 is undefined";
        return msg.str();
      }()),
      rank_(rank),
      dimension_(dimension) {}

Vector SolvePerturbedRidge(const Eigen::Ref<const Matrix>& x_pre,
                           const Vector& y_pre, double regularizer,
                           const Vector& linear_term) {
  CheckShapes(x_pre, y_pre);
  const Eigen::Index n = x_pre.rows();
  if (linear_term.size() != n) {
    throw std::invalid_argument("linear term length must equal donor count");
  }
  if (!(regularizer >= 0.0) || !std::isfinite(regularizer)) {
    throw std::invalid_argument("regularizer must be finite and nonnegative");
  }
  Eigen::MatrixXd lhs = TwiceGram(x_pre);
  lhs.diagonal().array() += regularizer;
  const Vector rhs = 2.0 * (x_pre * y_pre) - linear_term;

  if (regularizer > 0.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(lhs);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
  }
  // lambda = 0 (or a numerically indefinite system): fall back to a
  // rank-revealing factorisation and refuse singular systems.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(lhs);
  qr.setThreshold(1e-12);
  if (qr.rank() < n) {
    throw RankDeficientError(static_cast<int>(qr.rank()), static_cast<int>(n));
  }
  return qr.solve(rhs);
}

FitResult RidgeFit(const Eigen::Ref<const Matrix>& x_pre, const Vector& y_pre,
                   double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and nonnegative");
  }
  FitResult fit;
  fit.lambda = lambda;
  fit.method = FitMethod::kNonPrivate;
  fit.coeffs =
      SolvePerturbedRidge(x_pre, y_pre, lambda, Vector::Zero(x_pre.rows()));
  return fit;
}

double RidgeObjective(const Eigen::Ref<const Matrix>& x_pre,
                      const Vector& y_pre, double lambda, const Vector& f) {
  CheckShapes(x_pre, y_pre);
  const double t0 = static_cast<double>(y_pre.size());
  const Vector residual = y_pre - x_pre.transpose() * f;
  return residual.squaredNorm() / t0 + lambda / (2.0 * t0) * f.squaredNorm();
}

Vector RidgeGradient(const Eigen::Ref<const Matrix>& x_pre,
                     const Vector& y_pre, double lambda, const Vector& f) {
  CheckShapes(x_pre, y_pre);
  const double t0 = static_cast<double>(y_pre.size());
  const Vector residual = x_pre.transpose() * f - y_pre;
  return (2.0 / t0) * (x_pre * residual) + (lambda / t0) * f;
}

Vector Project(const Eigen::Ref<const Matrix>& x_post, const Vector& coeffs) {
  if (x_post.rows() != coeffs.size()) {
    std::ostringstream msg;
    msg << "X_post has " << x_post.rows() << " donors but coefficients have "
        << coeffs.size() << " entries";
    throw std::invalid_argument(msg.str());
  }
  return x_post.transpose() * coeffs;
}

Vector Project(const Eigen::Ref<const Matrix>& x_post, const FitResult& fit) {
  return Project(x_post, fit.coeffs);
}

ScPrediction ScFitPredict(const DonorPanel& panel, const TargetSeries& target,
                          double lambda) {
  CheckPaired(panel, target);
  FitResult fit = RidgeFit(panel.pre(), target.pre(), lambda);
  Vector prediction = Project(panel.post(), fit);
  return {std::move(fit), std::move(prediction)};
}

}  // namespace dpsc
