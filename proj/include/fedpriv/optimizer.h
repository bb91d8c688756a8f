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

// Seeded mini-batch gradient descent on the (optionally perturbed) regularized
// objective. Centralized training and every site's local training go through
// Minimize, so a single-site federation reproduces centralized runs exactly.

#ifndef FEDPRIV_OPTIMIZER_H_
#define FEDPRIV_OPTIMIZER_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "fedpriv/errors.h"
#include "fedpriv/loss.h"
#include "fedpriv/objective.h"
#include "fedpriv/perturbation.h"
#include "fedpriv/types.h"

namespace fedpriv {

struct OptimizerConfig {
  // Any batch_size >= n, including this sentinel, means full-batch descent.
  static constexpr Index kFullBatch = 0;

  double learning_rate = 0.1;
  int epochs = 50;
  Index batch_size = 64;
  double tolerance = 1e-4;
  std::uint64_t seed = 0;

  void Validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      throw ValidationError("learning_rate", "must be finite and > 0");
    }
    if (epochs < 0) throw ValidationError("epochs", "must be >= 0");
    if (batch_size < 0) {
      throw ValidationError("batch_size", "must be positive (0 = all rows)");
    }
    if (!(tolerance >= 0.0)) throw ValidationError("tolerance", "must be >= 0");
  }
};

template <typename Scalar>
struct BasicTrainResult {
  Vector<Scalar> weights;
  std::vector<Scalar> loss_history;  // objective after each epoch
  bool converged = false;
  int epochs_run = 0;
};

using TrainResult = BasicTrainResult<double>;

// True when the last epoch improved the loss by less than `tolerance`,
// relative to the previous loss.
template <typename Scalar>
bool HasConverged(std::span<const Scalar> history, double tolerance) {
  using std::abs;
  if (history.size() < 2) return false;
  const Scalar prev = history[history.size() - 2];
  const Scalar last = history.back();
  // Perturbed objectives can be negative, hence |prev|.
  const Scalar scale = std::max<Scalar>(abs(prev), Scalar(1e-12));
  return abs(last - prev) / scale < Scalar(tolerance);
}

inline bool HasConverged(const std::vector<double>& history, double tolerance) {
  return HasConverged<double>(std::span<const double>(history), tolerance);
}

template <typename Scalar>
BasicTrainResult<Scalar> Minimize(const BasicDataset<Scalar>& data,
                                  const LossKind& kind, double lambda,
                                  const PerturbationVector* perturb,
                                  const Vector<Scalar>& w0,
                                  const OptimizerConfig& cfg) {
  cfg.Validate();
  internal::CheckObjectiveInputs(w0.size(), data, lambda, perturb);

  BasicTrainResult<Scalar> result;
  result.weights = w0;
  if (cfg.epochs == 0) return result;

  const Index n = data.size();
  const Index d = data.dim();
  const bool full_batch =
      cfg.batch_size == OptimizerConfig::kFullBatch || cfg.batch_size >= n;
  const Index batch = full_batch ? n : cfg.batch_size;
  const Scalar step = Scalar(cfg.learning_rate);

  std::mt19937_64 engine(cfg.seed);
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Matrix<Scalar> batch_x(batch, d);
  Vector<Scalar> batch_y(batch);

  Vector<Scalar>& w = result.weights;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (full_batch) {
      Vector<Scalar> grad =
          MeanLossGradient(w, data.features(), data.labels(), kind);
      AddRegularizerGradient(w, lambda, perturb, n, grad);
      w -= step * grad;
    } else {
      std::shuffle(order.begin(), order.end(), engine);
      for (Index start = 0; start < n; start += batch) {
        const Index rows = std::min(batch, n - start);
        for (Index k = 0; k < rows; ++k) {
          const Index src = order[static_cast<size_t>(start + k)];
          batch_x.row(k) = data.features().row(src);
          batch_y(k) = data.labels()(src);
        }
        Vector<Scalar> grad =
            MeanLossGradient(w, batch_x.topRows(rows), batch_y.head(rows), kind);
        AddRegularizerGradient(w, lambda, perturb, n, grad);
        w -= step * grad;
      }
    }

    const Scalar loss = Objective(w, data, kind, lambda, perturb);
    using std::isfinite;
    if (!isfinite(loss) || !w.allFinite()) throw DivergenceError(epoch);
    result.loss_history.push_back(loss);
    result.epochs_run = epoch + 1;
    if (HasConverged<Scalar>(std::span<const Scalar>(result.loss_history),
                             cfg.tolerance)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace fedpriv

#endif  // FEDPRIV_OPTIMIZER_H_
