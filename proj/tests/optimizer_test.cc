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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "fedpriv/metrics.h"
#include "fedpriv/optimizer.h"
#include "test_util.h"

namespace fedpriv {
namespace {

TEST_CASE("has_converged examples") {
  CHECK_FALSE(HasConverged(std::vector<double>{}, 1e-4));
  CHECK_FALSE(HasConverged(std::vector<double>{1.0}, 1e-4));
  CHECK(HasConverged(std::vector<double>{1.0, 1.0}, 1e-4));
  CHECK_FALSE(HasConverged(std::vector<double>{1.0, 0.5}, 1e-4));
  CHECK_FALSE(HasConverged(std::vector<double>{1.0, 1.0}, 0.0));
  // Negative losses (perturbed objectives) use |previous| as the scale.
  CHECK(HasConverged(std::vector<double>{-2.0, -2.00001}, 1e-4));
}

TEST_CASE("zero epochs returns the start point") {
  const Dataset data = testing::RandomDataset(10, 3, 1);
  const Weights w0 = testing::RandomWeights(3, 1.0, 2);
  OptimizerConfig cfg;
  cfg.epochs = 0;
  const TrainResult r = Minimize(data, LossKind::Logistic(), 0.1, nullptr, w0, cfg);
  CHECK(r.weights == w0);
  CHECK(r.loss_history.empty());
  CHECK(r.epochs_run == 0);
}

TEST_CASE("ridge-only problem goes to zero") {
  // One all-zero example: the data term is constant, so the minimizer of
  // (lambda/2)|w|^2 is the origin.
  const Dataset data(Eigen::MatrixXd::Zero(1, 4), Eigen::VectorXd::Ones(1));
  OptimizerConfig cfg;
  cfg.epochs = 2000;
  cfg.learning_rate = 0.5;
  cfg.tolerance = 0.0;
  const TrainResult r = Minimize(data, LossKind::Logistic(), 1.0, nullptr,
                                 testing::RandomWeights(4, 3.0, 5), cfg);
  CHECK(r.weights.norm() < 1e-6);
  CHECK(r.loss_history.size() == 2000);
}

TEST_CASE("separable blobs are learned") {
  const Dataset data = testing::Blobs(400, 3.0, 0.5, 17);
  OptimizerConfig cfg;
  cfg.epochs = 200;
  cfg.batch_size = 32;
  cfg.seed = 3;
  const TrainResult r = Minimize(data, LossKind::Logistic(), 1e-3, nullptr,
                                 Weights::Zero(3).eval(), cfg);
  const double f1 = F1Score(PredictAll(r.weights, data), Labels(data));
  CHECK(f1 >= 0.95);

  // Independent reference: long full-batch run to near convergence.
  OptimizerConfig full;
  full.batch_size = OptimizerConfig::kFullBatch;
  full.epochs = 20000;
  full.learning_rate = 1.0;
  full.tolerance = 1e-12;
  const TrainResult ref = Minimize(data, LossKind::Logistic(), 1e-3, nullptr,
                                   Weights::Zero(3).eval(), full);
  CHECK(F1Score(PredictAll(ref.weights, data), Labels(data)) >= 0.95);
  // The mini-batch run lands near the same optimum value.
  CHECK(r.loss_history.back() <= ref.loss_history.back() + 1e-2);
}

TEST_CASE("minimize is deterministic for a fixed seed") {
  const Dataset data = testing::RandomDataset(123, 5, 8);
  OptimizerConfig cfg;
  cfg.epochs = 20;
  cfg.batch_size = 10;
  cfg.seed = 99;
  cfg.tolerance = 0.0;
  for (const auto& kind : testing::AllLossKinds()) {
    const TrainResult a =
        Minimize(data, kind, 0.01, nullptr, Weights::Zero(5).eval(), cfg);
    const TrainResult b =
        Minimize(data, kind, 0.01, nullptr, Weights::Zero(5).eval(), cfg);
    CHECK(a.weights == b.weights);
    CHECK(a.loss_history == b.loss_history);
  }
  OptimizerConfig other = cfg;
  other.seed = 100;
  const TrainResult a = Minimize(data, LossKind::Logistic(), 0.01, nullptr,
                                 Weights::Zero(5).eval(), cfg);
  const TrainResult c = Minimize(data, LossKind::Logistic(), 0.01, nullptr,
                                 Weights::Zero(5).eval(), other);
  CHECK(a.weights != c.weights);
}

TEST_CASE("full-batch descent with a safe step never increases the loss") {
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset data = testing::RandomDataset(40, 6, 500 + trial);
    PerturbationVector p;
    p.b = testing::RandomWeights(6, 2.0, 600 + trial);
    p.delta = 0.02;
    p.epsilon_eff = 0.5;
    for (const auto& kind : testing::AllLossKinds()) {
      for (const PerturbationVector* pp :
           {static_cast<const PerturbationVector*>(nullptr),
            static_cast<const PerturbationVector*>(&p)}) {
        const double lambda = 0.05;
        const double curvature =
            SmoothnessBound(kind) + lambda + (pp ? pp->delta : 0.0);
        OptimizerConfig cfg;
        cfg.batch_size = OptimizerConfig::kFullBatch;
        cfg.learning_rate = 1.0 / curvature;
        cfg.epochs = 100;
        cfg.tolerance = 0.0;
        const TrainResult r = Minimize(data, kind, lambda, pp,
                                       testing::RandomWeights(6, 1.0, trial), cfg);
        for (size_t t = 1; t < r.loss_history.size(); ++t) {
          REQUIRE(r.loss_history[t] <= r.loss_history[t - 1] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("oversized batches behave like a batch of n") {
  const Dataset data = testing::RandomDataset(30, 4, 21);
  OptimizerConfig exact;
  exact.batch_size = 30;
  exact.epochs = 15;
  exact.seed = 4;
  OptimizerConfig big = exact;
  big.batch_size = 1000;
  OptimizerConfig all = exact;
  all.batch_size = OptimizerConfig::kFullBatch;
  const auto run = [&](const OptimizerConfig& c) {
    return Minimize(data, LossKind::HuberHinge(), 0.01, nullptr,
                    Weights::Zero(4).eval(), c)
        .weights;
  };
  CHECK(run(big) == run(exact));
  CHECK(run(all) == run(exact));
}

TEST_CASE("training stops early once the loss plateaus") {
  const Dataset data = testing::RandomDataset(50, 3, 31);
  OptimizerConfig cfg;
  cfg.epochs = 10000;
  cfg.tolerance = 1e-4;
  const TrainResult r = Minimize(data, LossKind::Logistic(), 0.1, nullptr,
                                 Weights::Zero(3).eval(), cfg);
  CHECK(r.converged);
  CHECK(r.epochs_run < 10000);
  CHECK(r.loss_history.size() == static_cast<size_t>(r.epochs_run));
}

TEST_CASE("non-finite loss raises a divergence error with the epoch") {
  const Dataset data = testing::RandomDataset(20, 3, 41);
  OptimizerConfig cfg;
  cfg.learning_rate = 1e307;
  cfg.batch_size = OptimizerConfig::kFullBatch;
  cfg.epochs = 10;
  try {
    Minimize(data, LossKind::Logistic(), 1.0, nullptr,
             Weights::Ones(3).eval(), cfg);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.epoch() >= 0);
    CHECK(e.epoch() < 10);
  }
}

TEST_CASE("invalid optimizer settings are rejected") {
  const Dataset data = testing::RandomDataset(5, 2, 1);
  OptimizerConfig cfg;
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(Minimize(data, LossKind::Logistic(), 0.1, nullptr,
                           Weights::Zero(2).eval(), cfg),
                  ValidationError);
  cfg = OptimizerConfig{};
  cfg.epochs = -1;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg = OptimizerConfig{};
  cfg.tolerance = -1.0;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
}

}  // namespace
}  // namespace fedpriv
