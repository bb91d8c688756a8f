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

#ifndef FEDPRIV_TYPES_H_
#define FEDPRIV_TYPES_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fedpriv/errors.h"

namespace fedpriv {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Model parameters. The bias is an ordinary coordinate (constant feature).
using Weights = Vector<double>;

// Binary class label. Only -1 and +1 exist.
enum class Label : int { kNegative = -1, kPositive = 1 };

inline Label LabelFromValue(double v) {
  if (v == 1.0) return Label::kPositive;
  if (v == -1.0) return Label::kNegative;
  throw ValidationError("label", "must be -1 or +1, got " + std::to_string(v));
}

inline int ToInt(Label l) { return static_cast<int>(l); }

// Dense design matrix (one example per row) with labels in {-1, +1}.
//
// Labels are stored as Scalar so margins y * <w, x> stay a single Eigen
// expression.
template <typename Scalar>
class BasicDataset {
 public:
  BasicDataset() = default;

  BasicDataset(Matrix<Scalar> features, Vector<Scalar> labels)
      : features_(std::move(features)), labels_(std::move(labels)) {
    if (features_.rows() != labels_.size()) {
      throw DimensionMismatch("dataset labels", features_.rows(),
                              labels_.size());
    }
    for (Index i = 0; i < labels_.size(); ++i) {
      if (labels_(i) != Scalar(1) && labels_(i) != Scalar(-1)) {
        throw ValidationError("label", "row " + std::to_string(i) +
                                           " is not in {-1, +1}");
      }
    }
  }

  Index size() const { return features_.rows(); }
  Index dim() const { return features_.cols(); }
  bool empty() const { return size() == 0; }

  const Matrix<Scalar>& features() const { return features_; }
  const Vector<Scalar>& labels() const { return labels_; }

  auto row(Index i) const { return features_.row(i); }
  Label label(Index i) const { return LabelFromValue(double(labels_(i))); }

  // Rows in the given order; duplicates allowed.
  BasicDataset Subset(std::span<const Index> rows) const {
    BasicDataset out;
    out.features_.resize(static_cast<Index>(rows.size()), dim());
    out.labels_.resize(static_cast<Index>(rows.size()));
    for (Index k = 0; k < static_cast<Index>(rows.size()); ++k) {
      out.features_.row(k) = features_.row(rows[k]);
      out.labels_(k) = labels_(rows[k]);
    }
    return out;
  }

  Scalar MaxRowNorm() const {
    if (empty()) return Scalar(0);
    return features_.rowwise().norm().maxCoeff();
  }

 private:
  Matrix<Scalar> features_;
  Vector<Scalar> labels_;
};

using Dataset = BasicDataset<double>;

// Throws unless every weight is finite.
inline void CheckFinite(const Weights& w, const char* what) {
  if (!w.allFinite()) throw ValidationError(what, "contains non-finite entries");
}

}  // namespace fedpriv

#endif  // FEDPRIV_TYPES_H_
