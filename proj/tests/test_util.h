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

// Shared generators for the unit tests.

#ifndef FEDPRIV_TESTS_TEST_UTIL_H_
#define FEDPRIV_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <vector>

#include "fedpriv/loss.h"
#include "fedpriv/types.h"

namespace fedpriv::testing {

inline std::vector<LossKind> AllLossKinds() {
  return {LossKind::Logistic(), LossKind::HuberHinge(),
          LossKind::SmoothedPerceptron(), LossKind::HuberHinge(0.25),
          LossKind::SmoothedPerceptron(1.0)};
}

// Rows with norm <= 1, random labels.
inline Dataset RandomDataset(Index n, Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.05, 1.0);
  std::bernoulli_distribution coin(0.5);
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) x(i, j) = g(rng);
    x.row(i) *= radius(rng) / x.row(i).norm();
    y(i) = coin(rng) ? 1.0 : -1.0;
  }
  return Dataset(std::move(x), std::move(y));
}

// Two Gaussian blobs at +/- offset along the first axis, scaled into the
// unit ball; the last column is a constant bias.
inline Dataset Blobs(Index n, double offset, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) {
    y(i) = coin(rng) ? 1.0 : -1.0;
    x(i, 0) = y(i) * offset + noise * g(rng);
    x(i, 1) = noise * g(rng);
    x(i, 2) = 1.0;
  }
  x /= x.rowwise().norm().maxCoeff();
  return Dataset(std::move(x), std::move(y));
}

inline Weights RandomWeights(Index d, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  Weights w(d);
  for (Index j = 0; j < d; ++j) w(j) = g(rng);
  return w;
}

}  // namespace fedpriv::testing

#endif  // FEDPRIV_TESTS_TEST_UTIL_H_
