//
// Copyright 2026 The fedpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// L2-regularized empirical risk and its gradient, optionally with the
// objective-perturbation terms.
//
//   J(w) = (1/n) sum_i l(y_i <w, x_i>) + (lambda/2)|w|^2
//        [+ (delta/2)|w|^2 + <b, w>/n]

#ifndef FEDPRIV_OBJECTIVE_H_
#define FEDPRIV_OBJECTIVE_H_

#include <cmath>

#include <Eigen/Core>

#include "fedpriv/errors.h"
#include "fedpriv/loss.h"
#include "fedpriv/perturbation.h"
#include "fedpriv/types.h"

namespace fedpriv {

namespace internal {

template <typename Scalar>
void CheckObjectiveInputs(Index w_dim, const BasicDataset<Scalar>& data,
                          double lambda, const PerturbationVector* perturb) {
  if (!(lambda > 0.0)) throw ValidationError("lambda", "must be > 0");
  if (data.empty()) throw DataError("objective requires a non-empty dataset");
  if (w_dim != data.dim()) throw DimensionMismatch("weights", data.dim(), w_dim);
  if (perturb != nullptr && perturb->dim() != data.dim()) {
    throw DimensionMismatch("perturbation vector", data.dim(), perturb->dim());
  }
}

}  // namespace internal

// Mean loss over the rows of `features`.
template <typename DerivedW, typename DerivedX, typename DerivedY>
typename DerivedW::Scalar MeanLoss(const Eigen::MatrixBase<DerivedW>& w,
                                   const Eigen::MatrixBase<DerivedX>& features,
                                   const Eigen::MatrixBase<DerivedY>& labels,
                                   const LossKind& kind) {
  using Scalar = typename DerivedW::Scalar;
  const Vector<Scalar> margins = labels.cwiseProduct(features * w);
  Scalar sum(0);
  for (Index i = 0; i < margins.size(); ++i) {
    sum += LossValue<Scalar>(kind, margins(i));
  }
  return sum / Scalar(margins.size());
}

// Mean of l'(y_i <w, x_i>) y_i x_i over the rows of `features`.
template <typename DerivedW, typename DerivedX, typename DerivedY>
Vector<typename DerivedW::Scalar> MeanLossGradient(
    const Eigen::MatrixBase<DerivedW>& w,
    const Eigen::MatrixBase<DerivedX>& features,
    const Eigen::MatrixBase<DerivedY>& labels, const LossKind& kind) {
  using Scalar = typename DerivedW::Scalar;
  Vector<Scalar> coef = labels.cwiseProduct(features * w);
  for (Index i = 0; i < coef.size(); ++i) {
    coef(i) = LossGrad<Scalar>(kind, coef(i)) * labels(i);
  }
  return features.transpose() * coef / Scalar(coef.size());
}

// Adds the regularizer and perturbation gradient to a data-term gradient.
// `n` is the size of the full local dataset, not of a mini-batch.
template <typename Scalar, typename DerivedW>
void AddRegularizerGradient(const Eigen::MatrixBase<DerivedW>& w, double lambda,
                            const PerturbationVector* perturb, Index n,
                            Vector<Scalar>& grad) {
  double ridge = lambda;
  if (perturb != nullptr) ridge += perturb->delta;
  grad += Scalar(ridge) * w;
  if (perturb != nullptr) {
    grad += perturb->b.template cast<Scalar>() / Scalar(n);
  }
}

template <typename Scalar>
Scalar Objective(const Vector<Scalar>& w, const BasicDataset<Scalar>& data,
                 const LossKind& kind, double lambda,
                 const PerturbationVector* perturb = nullptr) {
  internal::CheckObjectiveInputs(w.size(), data, lambda, perturb);
  Scalar value = MeanLoss(w, data.features(), data.labels(), kind) +
                 Scalar(lambda / 2.0) * w.squaredNorm();
  if (perturb != nullptr) {
    value += Scalar(perturb->delta / 2.0) * w.squaredNorm() +
             perturb->b.template cast<Scalar>().dot(w) / Scalar(data.size());
  }
  return value;
}

template <typename Scalar>
Vector<Scalar> ObjectiveGradient(const Vector<Scalar>& w,
                                 const BasicDataset<Scalar>& data,
                                 const LossKind& kind, double lambda,
                                 const PerturbationVector* perturb = nullptr) {
  internal::CheckObjectiveInputs(w.size(), data, lambda, perturb);
  Vector<Scalar> grad =
      MeanLossGradient(w, data.features(), data.labels(), kind);
  AddRegularizerGradient(w, lambda, perturb, data.size(), grad);
  return grad;
}

}  // namespace fedpriv

#endif  // FEDPRIV_OBJECTIVE_H_
