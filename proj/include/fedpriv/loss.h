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

// Convex margin losses l(z), z = y * <w, x>, used by the three linear
// classifiers. Every loss has |l'| <= 1 and a finite bound on |l''|, which the
// objective-perturbation mechanism needs.

#ifndef FEDPRIV_LOSS_H_
#define FEDPRIV_LOSS_H_

#include <cmath>
#include <string>

#include "fedpriv/errors.h"

namespace fedpriv {

class LossKind {
 public:
  enum class Family { kLogistic, kHuberHinge, kSmoothedPerceptron };

  static constexpr double kDefaultSmoothing = 0.5;

  static LossKind Logistic() { return LossKind(Family::kLogistic, 0.0); }
  // Huber-smoothed hinge (smooth SVM) with quadratic zone |1 - z| <= h.
  static LossKind HuberHinge(double h = kDefaultSmoothing) {
    return LossKind(Family::kHuberHinge, CheckWidth(h));
  }
  // Huber-smoothed perceptron max(0, -z) with quadratic zone |z| <= h.
  static LossKind SmoothedPerceptron(double h = kDefaultSmoothing) {
    return LossKind(Family::kSmoothedPerceptron, CheckWidth(h));
  }

  // Accepts "logistic", "svm", "perceptron", optionally suffixed with ":h".
  static LossKind Parse(const std::string& text);

  Family family() const { return family_; }
  double smoothing() const { return h_; }

  // Stable name, round-trips through Parse.
  std::string Name() const;

  friend bool operator==(const LossKind&, const LossKind&) = default;

 private:
  LossKind(Family f, double h) : family_(f), h_(h) {}

  static double CheckWidth(double h) {
    if (!(h > 0.0 && h <= 1.0)) {
      throw ValidationError("smoothing width h", "must lie in (0, 1]");
    }
    return h;
  }

  Family family_;
  double h_;
};

template <typename Scalar>
Scalar LossValue(const LossKind& kind, Scalar z) {
  using std::exp;
  using std::log1p;
  const Scalar h = Scalar(kind.smoothing());
  switch (kind.family()) {
    case LossKind::Family::kLogistic:
      // log(1 + e^{-z}) without overflow for large |z|.
      return z > Scalar(0) ? log1p(exp(-z)) : -z + log1p(exp(z));
    case LossKind::Family::kHuberHinge: {
      const Scalar gap = Scalar(1) + h - z;
      if (z > Scalar(1) + h) return Scalar(0);
      if (z < Scalar(1) - h) return Scalar(1) - z;
      return gap * gap / (Scalar(4) * h);
    }
    case LossKind::Family::kSmoothedPerceptron: {
      const Scalar gap = h - z;
      if (z > h) return Scalar(0);
      if (z < -h) return -z;
      return gap * gap / (Scalar(4) * h);
    }
  }
  return Scalar(0);
}

template <typename Scalar>
Scalar LossGrad(const LossKind& kind, Scalar z) {
  using std::exp;
  const Scalar h = Scalar(kind.smoothing());
  switch (kind.family()) {
    case LossKind::Family::kLogistic:
      // -1 / (1 + e^z), evaluated on the side that cannot overflow.
      if (z > Scalar(0)) {
        const Scalar e = exp(-z);
        return -e / (Scalar(1) + e);
      }
      return Scalar(-1) / (Scalar(1) + exp(z));
    case LossKind::Family::kHuberHinge:
      if (z > Scalar(1) + h) return Scalar(0);
      if (z < Scalar(1) - h) return Scalar(-1);
      return -(Scalar(1) + h - z) / (Scalar(2) * h);
    case LossKind::Family::kSmoothedPerceptron:
      if (z > h) return Scalar(0);
      if (z < -h) return Scalar(-1);
      return -(h - z) / (Scalar(2) * h);
  }
  return Scalar(0);
}

// Upper bound c on |l''(z)| over all z.
inline double SmoothnessBound(const LossKind& kind) {
  switch (kind.family()) {
    case LossKind::Family::kLogistic:
      return 0.25;
    case LossKind::Family::kHuberHinge:
    case LossKind::Family::kSmoothedPerceptron:
      return 1.0 / (2.0 * kind.smoothing());
  }
  return 0.0;
}

}  // namespace fedpriv

#endif  // FEDPRIV_LOSS_H_
