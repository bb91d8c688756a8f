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

// Tabular ingestion, unit-ball preprocessing, deterministic splits, and the
// synthetic cohorts used in place of clinical data.

#ifndef FEDPRIV_DATA_H_
#define FEDPRIV_DATA_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fedpriv/types.h"

namespace fedpriv {

// Numeric table as read from disk. Labels are already mapped to {-1, +1}.
struct RawTable {
  std::vector<std::string> feature_names;
  std::string label_column = "label";
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;

  Index rows() const { return features.rows(); }
};

// Header row required, comma separated. Labels may be {-1, +1} or {0, 1};
// 0 becomes -1. Errors name the offending line (1-based, header is line 1).
RawTable ParseCsv(std::istream& in, const std::string& label_column,
                  const std::string& source = "<stream>");
RawTable LoadCsv(const std::filesystem::path& path,
                 const std::string& label_column = "label");

// Writes the table with the label as last column; values round-trip exactly.
void WriteCsv(const RawTable& table, std::ostream& out);
void SaveCsv(const RawTable& table, const std::filesystem::path& path);

struct PreprocessReport {
  double scale_factor = 1.0;
  double max_row_norm_before = 0.0;
  bool bias_appended = false;
};

struct Preprocessed {
  Dataset data;
  PreprocessReport report;
};

// Optionally appends a constant-1 feature, then divides every row by one
// global factor max(1, max row norm) so all rows lie in the unit ball.
Preprocessed Preprocess(const Dataset& data, bool append_bias = true);
Preprocessed Preprocess(const RawTable& table, bool append_bias = true);

struct TrainTest {
  Dataset train;
  Dataset test;
};

// Seeded shuffle; train receives floor(train_fraction * n) rows.
TrainTest TrainTestSplit(const Dataset& data, double train_fraction = 0.7,
                         std::uint64_t seed = 0);

// Validation index sets of a seeded k-fold split. The first n % k folds hold
// one extra row.
std::vector<std::vector<Index>> KFoldIndices(Index n, int k,
                                             std::uint64_t seed);

struct Fold {
  Dataset train;
  Dataset validation;
};

std::vector<Fold> KFold(const Dataset& data, int k = 5, std::uint64_t seed = 0);

struct SyntheticSpec {
  Index n = 1000;
  Index dim = 10;
  double positive_rate = 0.5;
  double class_separation = 2.0;
  double noise_scale = 1.0;
  std::uint64_t seed = 0;

  void Validate() const;

  // "separable", "lced-like" or "mimic-like".
  static SyntheticSpec Named(const std::string& name, std::uint64_t seed = 0);
  static std::vector<std::string> Names();
};

// Class-conditional Gaussians centred at +/-(separation/2) u for a seeded
// unit direction u, before any preprocessing.
RawTable GenerateSyntheticTable(const SyntheticSpec& spec);

// GenerateSyntheticTable followed by Preprocess (bias appended).
Dataset GenerateSynthetic(const SyntheticSpec& spec);

}  // namespace fedpriv

#endif  // FEDPRIV_DATA_H_
