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

// Experiment protocol: for every (mode, loss, epsilon, seed) the data is split
// 70/30, k-fold cross-validation runs on the training portion, the model is
// retrained on the whole training portion, and F1 is measured on the held-out
// portion. Rows are emitted in canonical order so reports are reproducible.

#ifndef FEDPRIV_EXPERIMENTS_H_
#define FEDPRIV_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedpriv/data.h"
#include "fedpriv/federation.h"
#include "fedpriv/loss.h"
#include "fedpriv/optimizer.h"

namespace fedpriv {

enum class Mode { kCentralized, kFederated, kFederatedDp };

std::string ModeName(Mode mode);
Mode ParseMode(const std::string& text);

struct DataSource {
  // Exactly one of csv / synthetic is used; csv wins when set.
  std::optional<std::filesystem::path> csv;
  std::string label_column = "label";
  std::string synthetic = "separable";
  std::uint64_t data_seed = 0;
};

struct ExperimentConfig {
  DataSource source;
  std::vector<LossKind> losses = {LossKind::Logistic()};
  double lambda = 0.01;
  std::vector<double> epsilon_grid = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<Mode> modes = {Mode::kCentralized, Mode::kFederated,
                             Mode::kFederatedDp};
  int num_sites = 10;
  int rounds = 10;
  PartitionStrategy partition = PartitionStrategy::IidEqual();
  // Local optimizer. Centralized runs get rounds * epochs epochs so both
  // modes see the same epoch budget.
  OptimizerConfig optimizer;
  std::vector<std::uint64_t> seeds = {0};
  // 0 disables cross-validation; otherwise >= 2.
  int cv_folds = 5;
  double train_fraction = 0.7;
  std::filesystem::path output = "results.csv";

  void Validate() const;

  // Sorted key=value lines of every setting except the output path.
  std::string Canonical() const;
  // 16 hex digits of FNV-1a over Canonical().
  std::string Hash() const;
};

// Settings keyed by CLI flag name without the leading dashes.
using Settings = std::map<std::string, std::string>;

const std::vector<std::string>& SettingKeys();

// Flat key=value text; '#' starts a comment. Unknown keys are errors.
Settings ParseSettings(std::istream& in, const std::string& source);
Settings LoadSettings(const std::filesystem::path& path);

ExperimentConfig ConfigFromSettings(const Settings& settings);

struct ResultRow {
  std::string run_id;
  Mode mode = Mode::kCentralized;
  std::string loss_kind;
  std::optional<double> epsilon;
  int num_sites = 1;
  std::string partition_strategy;
  int rounds_run = 0;
  // Fold index, or kHoldoutFold for the final held-out evaluation.
  int fold = 0;
  std::uint64_t seed = 0;
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double final_train_loss = 0.0;
  std::int64_t wall_ms = 0;
  std::string config_hash;

  static constexpr int kHoldoutFold = -1;
  bool holdout() const { return fold == kHoldoutFold; }
};

// Loads or generates the dataset named by the config, preprocessed.
Dataset LoadExperimentData(const ExperimentConfig& cfg);

std::vector<ResultRow> RunExperiment(const ExperimentConfig& cfg);
std::vector<ResultRow> RunExperiment(const ExperimentConfig& cfg,
                                     const Dataset& data);

const std::vector<std::string>& ResultColumns();
void WriteResults(std::span<const ResultRow> rows, std::ostream& out);
std::vector<ResultRow> ReadResults(std::istream& in);

// Key=value description of the protocol choices behind a report, written
// next to it.
void WriteReportMetadata(const ExperimentConfig& cfg, std::ostream& out);

struct SweepRow {
  std::string loss_kind;
  double epsilon = 0.0;
  int runs = 0;
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
};

// Held-out F1 of the federated+DP rows by (loss, epsilon), ascending epsilon.
std::vector<SweepRow> EpsilonSweep(std::span<const ResultRow> rows);
std::vector<SweepRow> EpsilonSweep(const ExperimentConfig& cfg);
void WriteSweep(std::span<const SweepRow> rows, std::ostream& out);

struct ComparisonRow {
  std::string loss_kind;
  std::string mode;
  int runs = 0;
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
  // Mean F1 minus the centralized mean F1 of the same loss.
  std::optional<double> gap_vs_centralized;
  std::string note;
};

// Held-out F1 by (loss, mode). Losses without a centralized baseline get
// empty gaps and a warning row.
std::vector<ComparisonRow> CompareModes(std::span<const ResultRow> rows);
void WriteComparison(std::span<const ComparisonRow> rows, std::ostream& out);

// Shortest decimal text that parses back to the same double.
std::string FormatReal(double v);

}  // namespace fedpriv

#endif  // FEDPRIV_EXPERIMENTS_H_
