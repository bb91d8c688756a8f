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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "fedpriv/data.h"
#include "fedpriv/metrics.h"
#include "fedpriv/optimizer.h"
#include "test_util.h"

namespace fedpriv {
namespace {

RawTable Parse(const std::string& text, const std::string& label = "label") {
  std::istringstream in(text);
  return ParseCsv(in, label, "test.csv");
}

std::string DataErrorMessage(const std::string& text) {
  try {
    Parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("well-formed csv") {
  const RawTable t = Parse("a,label,b\n1,1,2\n3,0,4\n5,-1,6\n");
  CHECK(t.rows() == 3);
  CHECK(t.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(t.features(1, 0) == 3.0);
  CHECK(t.features(2, 1) == 6.0);
  CHECK(t.labels(0) == 1.0);
  CHECK(t.labels(1) == -1.0);  // 0 maps to -1
  CHECK(t.labels(2) == -1.0);
}

TEST_CASE("csv errors name the offending line") {
  CHECK(DataErrorMessage("a,label\n1,1\n2\n").find("line 3") != std::string::npos);
  const std::string bad = DataErrorMessage("a,label\n1,1\nx,0\n");
  CHECK(bad.find("line 3") != std::string::npos);
  CHECK(bad.find("column 'a'") != std::string::npos);
  CHECK(DataErrorMessage("a,label\n1,2\n").find("label") != std::string::npos);
  CHECK(DataErrorMessage("a,b\n1,2\n").find("no label column") != std::string::npos);
  CHECK(DataErrorMessage("").find("header") != std::string::npos);
  CHECK(DataErrorMessage("a,label\n").find("no data rows") != std::string::npos);
  CHECK_THROWS_AS(LoadCsv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("custom label column and whitespace") {
  const RawTable t = Parse("x, y ,outcome\r\n 1.5 ,2,1\r\n", "outcome");
  CHECK(t.rows() == 1);
  CHECK(t.features(0, 0) == 1.5);
  CHECK(t.feature_names[1] == "y");
}

TEST_CASE("csv round-trip through a file") {
  const RawTable t = GenerateSyntheticTable(SyntheticSpec::Named("separable", 3));
  const auto path = std::filesystem::temp_directory_path() / "fedpriv_rt.csv";
  SaveCsv(t, path);
  const RawTable back = LoadCsv(path);
  std::filesystem::remove(path);
  CHECK(back.features == t.features);
  CHECK(back.labels == t.labels);
  CHECK(back.feature_names == t.feature_names);
}

TEST_CASE("preprocess leaves unit-ball data alone") {
  Eigen::MatrixXd x(2, 2);
  x << 0.1, 0.2, -0.3, 0.0;
  Eigen::VectorXd y(2);
  y << 1, -1;
  // Even with the bias column these rows have norm <= 1.
  const Preprocessed p = Preprocess(Dataset(x * 0.1, y), true);
  CHECK(p.report.bias_appended);
  CHECK(p.data.dim() == 3);
  CHECK(p.data.features().col(2) == Eigen::VectorXd::Ones(2) / p.report.scale_factor);

  const Preprocessed q = Preprocess(Dataset(x, y), false);
  CHECK(q.report.scale_factor == 1.0);
  CHECK(q.data.features() == x);
}

TEST_CASE("preprocess scales the largest row onto the sphere") {
  Eigen::MatrixXd x(2, 2);
  x << 4.0, 0.0, 0.1, 0.1;  // with bias: norm sqrt(17)
  Eigen::VectorXd y(2);
  y << 1, -1;
  const Preprocessed p = Preprocess(Dataset(x, y));
  CHECK(p.report.scale_factor == doctest::Approx(std::sqrt(17.0)));
  CHECK(p.data.features().row(0).norm() == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::MatrixXd five(1, 2);
  five << 3.0, 4.0;
  const Preprocessed q = Preprocess(Dataset(five, Eigen::VectorXd::Ones(1)), false);
  CHECK(q.report.max_row_norm_before == 5.0);
  CHECK(q.data.features().row(0).norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Preprocess(Dataset(Eigen::MatrixXd(2, 0), y), false),
                  DataError);
}

TEST_CASE("preprocess on random tables") {
  for (int trial = 0; trial < 30; ++trial) {
    std::mt19937_64 rng(trial);
    std::normal_distribution<double> g(0.0, 0.05 + 0.1 * trial);
    const Index n = 5 + trial, d = 1 + trial % 6;
    Eigen::MatrixXd x(n, d);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < d; ++j) x(i, j) = g(rng);
    const Dataset raw(x, Eigen::VectorXd::Ones(n));
    const Preprocessed p = Preprocess(raw, trial % 2 == 0);
    const double before = p.report.max_row_norm_before;
    const double after = p.data.MaxRowNorm();
    if (before > 1.0) {
      CHECK(after == doctest::Approx(1.0).epsilon(1e-14));
    } else {
      CHECK(after == before);
    }
    // Idempotent: a second pass (no new bias) changes nothing.
    const Preprocessed again = Preprocess(p.data, false);
    CHECK(again.report.scale_factor == 1.0);
    CHECK(again.data.features() == p.data.features());
  }
}

TEST_CASE("train/test split") {
  const Dataset data = testing::RandomDataset(10, 2, 1);
  const TrainTest s = TrainTestSplit(data, 0.7, 5);
  CHECK(s.train.size() == 7);
  CHECK(s.test.size() == 3);
  const TrainTest again = TrainTestSplit(data, 0.7, 5);
  CHECK(again.train.features() == s.train.features());
  CHECK_THROWS_AS(TrainTestSplit(data, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(TrainTestSplit(testing::RandomDataset(1, 2, 1), 0.5, 1),
                  DataError);
}

// Rows of the given datasets as sorted tuples, for multiset comparison.
std::vector<std::vector<double>> RowMultiset(
    const std::vector<const Dataset*>& parts) {
  std::vector<std::vector<double>> rows;
  for (const Dataset* d : parts) {
    for (Index i = 0; i < d->size(); ++i) {
      std::vector<double> r(d->features().row(i).begin(),
                            d->features().row(i).end());
      r.push_back(d->labels()(i));
      rows.push_back(std::move(r));
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST_CASE("splits are exhaustive and disjoint over random sizes") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Index> n_dist(2, 400);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = n_dist(rng);
    const Dataset data = testing::RandomDataset(n, 3, 900 + trial);
    const double f = frac(rng);
    const Index expected_train = static_cast<Index>(std::floor(f * double(n)));
    if (expected_train < 1 || expected_train >= n) {
      CHECK_THROWS_AS(TrainTestSplit(data, f, trial), DataError);
      continue;
    }
    const TrainTest s = TrainTestSplit(data, f, trial);
    REQUIRE(s.train.size() == expected_train);
    REQUIRE(RowMultiset({&s.train, &s.test}) == RowMultiset({&data}));
  }
}

TEST_CASE("k-fold examples") {
  auto folds = KFoldIndices(10, 5, 3);
  for (const auto& f : folds) CHECK(f.size() == 2);
  folds = KFoldIndices(11, 5, 3);
  std::vector<size_t> sizes;
  for (const auto& f : folds) sizes.push_back(f.size());
  CHECK(sizes == std::vector<size_t>{3, 2, 2, 2, 2});
  CHECK_THROWS_AS(KFoldIndices(4, 5, 1), DataError);
  CHECK_THROWS_AS(KFoldIndices(10, 1, 1), ValidationError);
}

TEST_CASE("k-fold property: every example validated exactly once") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + trial % 9;
    const Index n = k + static_cast<Index>(rng() % 300);
    const auto folds = KFoldIndices(n, k, trial);
    std::vector<int> seen(static_cast<size_t>(n), 0);
    size_t lo = folds[0].size(), hi = folds[0].size();
    for (const auto& f : folds) {
      for (Index i : f) ++seen[static_cast<size_t>(i)];
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
    }
    REQUIRE(hi - lo <= 1);
    REQUIRE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    REQUIRE(KFoldIndices(n, k, trial) == folds);
  }
  const Dataset data = testing::RandomDataset(23, 2, 6);
  for (const Fold& f : KFold(data, 4, 2)) {
    CHECK(f.train.size() + f.validation.size() == 23);
    CHECK(RowMultiset({&f.train, &f.validation}) == RowMultiset({&data}));
  }
}

TEST_CASE("synthetic cohorts are deterministic and in the unit ball") {
  SyntheticSpec spec;
  spec.n = 500;
  spec.dim = 7;
  spec.seed = 12;
  const Dataset a = GenerateSynthetic(spec);
  const Dataset b = GenerateSynthetic(spec);
  CHECK(a.features() == b.features());
  CHECK(a.labels() == b.labels());
  CHECK(a.dim() == 8);
  CHECK(a.MaxRowNorm() <= 1.0 + 1e-12);
  spec.seed = 13;
  CHECK(GenerateSynthetic(spec).features() != a.features());
}

TEST_CASE("synthetic positive rate") {
  SyntheticSpec spec;
  spec.n = 100000;
  spec.dim = 2;
  spec.positive_rate = 0.13;
  const Dataset d = GenerateSynthetic(spec);
  const double rate = (d.labels().array() > 0).cast<double>().mean();
  CHECK(std::abs(rate - 0.13) <= 0.02 * 0.13);
}

double TrainAndScore(const Dataset& data, std::uint64_t seed, bool accuracy) {
  const TrainTest s = TrainTestSplit(data, 0.7, seed);
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.epochs = 100;
  const TrainResult r = Minimize(s.train, LossKind::Logistic(), 1e-3, nullptr,
                                 Weights::Zero(data.dim()).eval(), cfg);
  const auto pred = PredictAll(r.weights, s.test);
  const auto truth = Labels(s.test);
  if (!accuracy) return F1Score(pred, truth);
  long hits = 0;
  for (size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i];
  return double(hits) / double(pred.size());
}

TEST_CASE("indistinguishable classes cannot be learned") {
  SyntheticSpec spec;
  spec.n = 4000;
  spec.dim = 5;
  spec.positive_rate = 0.5;
  spec.class_separation = 0.0;
  double acc = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    spec.seed = seed;
    acc += TrainAndScore(GenerateSynthetic(spec), seed, true);
  }
  CHECK(acc / 5.0 <= 0.55);
}

TEST_CASE("well separated classes are learned") {
  SyntheticSpec spec;
  spec.n = 4000;
  spec.dim = 5;
  spec.positive_rate = 0.3;
  spec.class_separation = 10.0;
  spec.seed = 2;
  CHECK(TrainAndScore(GenerateSynthetic(spec), 2, false) >= 0.95);
}

TEST_CASE("named cohorts") {
  CHECK(SyntheticSpec::Named("mimic-like").n == 21139);
  CHECK(SyntheticSpec::Named("mimic-like").positive_rate == 0.13);
  CHECK(SyntheticSpec::Named("lced-like").positive_rate == 0.05);
  CHECK(SyntheticSpec::Named("separable").dim == 20);
  CHECK_THROWS_AS(SyntheticSpec::Named("mimic"), ValidationError);
  SyntheticSpec bad;
  bad.positive_rate = 1.0;
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
}

}  // namespace
}  // namespace fedpriv
