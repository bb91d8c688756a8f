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

#include "fedpriv/metrics.h"

#include "fedpriv/errors.h"

namespace fedpriv {

Label Predict(const Weights& w, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (w.size() != x.size()) throw DimensionMismatch("features", w.size(), x.size());
  return w.dot(x) >= 0.0 ? Label::kPositive : Label::kNegative;
}

std::vector<Label> PredictAll(const Weights& w, const Dataset& data) {
  if (w.size() != data.dim()) {
    throw DimensionMismatch("weights", data.dim(), w.size());
  }
  const Eigen::VectorXd scores = data.features() * w;
  std::vector<Label> out(static_cast<size_t>(scores.size()));
  for (Index i = 0; i < scores.size(); ++i) {
    out[i] = scores(i) >= 0.0 ? Label::kPositive : Label::kNegative;
  }
  return out;
}

std::vector<Label> Labels(const Dataset& data) {
  std::vector<Label> out(static_cast<size_t>(data.size()));
  for (Index i = 0; i < data.size(); ++i) out[i] = data.label(i);
  return out;
}

ConfusionMatrix ConfusionMatrix::Count(std::span<const Label> predictions,
                                       std::span<const Label> truth) {
  if (predictions.size() != truth.size()) {
    throw DimensionMismatch("predictions", static_cast<Index>(truth.size()),
                            static_cast<Index>(predictions.size()));
  }
  if (truth.empty()) throw DataError("metrics require at least one example");
  ConfusionMatrix m;
  for (size_t i = 0; i < truth.size(); ++i) {
    const bool pred_pos = predictions[i] == Label::kPositive;
    const bool true_pos = truth[i] == Label::kPositive;
    if (pred_pos && true_pos) {
      ++m.true_positive;
    } else if (pred_pos) {
      ++m.false_positive;
    } else if (true_pos) {
      ++m.false_negative;
    } else {
      ++m.true_negative;
    }
  }
  return m;
}

double ConfusionMatrix::Precision() const {
  const long denom = true_positive + false_positive;
  return denom == 0 ? 0.0 : double(true_positive) / double(denom);
}

double ConfusionMatrix::Recall() const {
  const long denom = true_positive + false_negative;
  return denom == 0 ? 0.0 : double(true_positive) / double(denom);
}

double ConfusionMatrix::F1() const {
  const long denom = 2 * true_positive + false_positive + false_negative;
  return denom == 0 ? 0.0 : 2.0 * double(true_positive) / double(denom);
}

double F1Score(std::span<const Label> predictions,
               std::span<const Label> truth) {
  return ConfusionMatrix::Count(predictions, truth).F1();
}

}  // namespace fedpriv
