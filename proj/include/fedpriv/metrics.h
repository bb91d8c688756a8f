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

#ifndef FEDPRIV_METRICS_H_
#define FEDPRIV_METRICS_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "fedpriv/types.h"

namespace fedpriv {

// sign(<w, x>), with sign(0) = +1.
Label Predict(const Weights& w, const Eigen::Ref<const Eigen::VectorXd>& x);

std::vector<Label> PredictAll(const Weights& w, const Dataset& data);

std::vector<Label> Labels(const Dataset& data);

// Counts for the positive class +1.
struct ConfusionMatrix {
  long true_positive = 0;
  long false_positive = 0;
  long false_negative = 0;
  long true_negative = 0;

  static ConfusionMatrix Count(std::span<const Label> predictions,
                               std::span<const Label> truth);

  // Each ratio is 0 when its denominator is 0.
  double Precision() const;
  double Recall() const;
  double F1() const;
};

double F1Score(std::span<const Label> predictions,
               std::span<const Label> truth);

}  // namespace fedpriv

#endif  // FEDPRIV_METRICS_H_
