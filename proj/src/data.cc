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

#include "fedpriv/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

#include "fedpriv/errors.h"
#include "fedpriv/seeding.h"

namespace fedpriv {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool ParseDouble(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<Index> ShuffledIndices(Index n, std::uint64_t seed) {
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 engine(seed);
  std::shuffle(order.begin(), order.end(), engine);
  return order;
}

}  // namespace

RawTable ParseCsv(std::istream& in, const std::string& label_column,
                  const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": missing header row");
  std::vector<std::string> header;
  for (std::string_view field : SplitFields(line)) header.emplace_back(field);

  RawTable table;
  table.label_column = label_column;
  long label_index = -1;
  for (size_t c = 0; c < header.size(); ++c) {
    if (header[c] == label_column) {
      if (label_index >= 0) {
        throw DataError(source + ": label column '" + label_column +
                        "' appears twice");
      }
      label_index = static_cast<long>(c);
    } else {
      table.feature_names.emplace_back(header[c]);
    }
  }
  if (label_index < 0) {
    throw DataError(source + ": no label column named '" + label_column + "'");
  }

  std::vector<double> values;
  std::vector<double> labels;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != header.size()) {
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      double v = 0.0;
      if (!ParseDouble(fields[c], v)) {
        throw DataError(source + ": line " + std::to_string(line_no) +
                        ", column '" + header[c] +
                        "': not a number: '" + std::string(fields[c]) + "'");
      }
      if (static_cast<long>(c) != label_index) {
        values.push_back(v);
        continue;
      }
      if (v == 1.0) {
        labels.push_back(1.0);
      } else if (v == 0.0 || v == -1.0) {
        labels.push_back(-1.0);
      } else {
        throw DataError(source + ": line " + std::to_string(line_no) +
                        ": label must be in {-1, +1} or {0, 1}, got '" +
                        std::string(fields[c]) + "'");
      }
    }
  }
  if (labels.empty()) throw DataError(source + ": no data rows");

  const Index rows = static_cast<Index>(labels.size());
  const Index cols = static_cast<Index>(table.feature_names.size());
  table.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                  Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), rows, cols);
  table.labels = Eigen::Map<const Eigen::VectorXd>(labels.data(), rows);
  return table;
}

RawTable LoadCsv(const std::filesystem::path& path,
                 const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return ParseCsv(in, label_column, path.string());
}

void WriteCsv(const RawTable& table, std::ostream& out) {
  for (const auto& name : table.feature_names) out << name << ',';
  out << table.label_column << '\n';
  for (Index i = 0; i < table.rows(); ++i) {
    for (Index j = 0; j < table.features.cols(); ++j) {
      out << FormatDouble(table.features(i, j)) << ',';
    }
    out << (table.labels(i) > 0 ? "1" : "-1") << '\n';
  }
}

void SaveCsv(const RawTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  WriteCsv(table, out);
  if (!out) throw DataError("write failed for " + path.string());
}

Preprocessed Preprocess(const Dataset& data, bool append_bias) {
  const Index d = data.dim() + (append_bias ? 1 : 0);
  if (d == 0) throw DataError("dataset has no features");
  Eigen::MatrixXd x(data.size(), d);
  x.leftCols(data.dim()) = data.features();
  if (append_bias) x.col(d - 1).setOnes();

  Preprocessed out;
  out.report.bias_appended = append_bias;
  out.report.max_row_norm_before =
      data.size() > 0 ? x.rowwise().norm().maxCoeff() : 0.0;
  // Rows already within the tolerance are left alone so a second pass is a
  // no-op.
  if (out.report.max_row_norm_before > 1.0 + 1e-12) {
    out.report.scale_factor = out.report.max_row_norm_before;
    x /= out.report.scale_factor;
  }
  out.data = Dataset(std::move(x), data.labels());
  return out;
}

Preprocessed Preprocess(const RawTable& table, bool append_bias) {
  return Preprocess(Dataset(table.features, table.labels), append_bias);
}

TrainTest TrainTestSplit(const Dataset& data, double train_fraction,
                         std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train_fraction", "must lie in (0, 1)");
  }
  const Index n = data.size();
  const Index n_train =
      static_cast<Index>(std::floor(train_fraction * double(n)));
  if (n < 2 || n_train < 1 || n_train >= n) {
    throw DataError("cannot split " + std::to_string(n) +
                    " examples with train fraction " +
                    std::to_string(train_fraction));
  }
  const auto order = ShuffledIndices(n, seed);
  const std::span<const Index> all(order);
  return {data.Subset(all.first(static_cast<size_t>(n_train))),
          data.Subset(all.subspan(static_cast<size_t>(n_train)))};
}

std::vector<std::vector<Index>> KFoldIndices(Index n, int k,
                                             std::uint64_t seed) {
  if (k < 2) throw ValidationError("k", "need at least 2 folds");
  if (n < k) {
    throw DataError("cannot make " + std::to_string(k) + " folds from " +
                    std::to_string(n) + " examples");
  }
  const auto order = ShuffledIndices(n, seed);
  std::vector<std::vector<Index>> folds(static_cast<size_t>(k));
  auto it = order.begin();
  for (int f = 0; f < k; ++f) {
    const Index size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(it, it + size);
    it += size;
  }
  return folds;
}

std::vector<Fold> KFold(const Dataset& data, int k, std::uint64_t seed) {
  const auto folds = KFoldIndices(data.size(), k, seed);
  std::vector<Fold> out;
  for (size_t f = 0; f < folds.size(); ++f) {
    std::vector<Index> train;
    for (size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
    }
    out.push_back({data.Subset(train), data.Subset(folds[f])});
  }
  return out;
}

void SyntheticSpec::Validate() const {
  if (n < 1) throw ValidationError("n", "must be >= 1");
  if (dim < 1) throw ValidationError("dim", "must be >= 1");
  if (!(positive_rate > 0.0 && positive_rate < 1.0)) {
    throw ValidationError("positive_rate", "must lie in (0, 1)");
  }
  if (!(class_separation >= 0.0) || !std::isfinite(class_separation)) {
    throw ValidationError("class_separation", "must be finite and >= 0");
  }
  if (!(noise_scale > 0.0) || !std::isfinite(noise_scale)) {
    throw ValidationError("noise_scale", "must be finite and > 0");
  }
}

SyntheticSpec SyntheticSpec::Named(const std::string& name,
                                   std::uint64_t seed) {
  SyntheticSpec s;
  s.seed = seed;
  if (name == "separable") {
    s.n = 20000;
    s.dim = 20;
    s.positive_rate = 0.2;
    s.class_separation = 6.0;
  } else if (name == "lced-like") {
    // Large cohort with a rare positive outcome.
    s.n = 50000;
    s.dim = 30;
    s.positive_rate = 0.05;
    s.class_separation = 3.0;
  } else if (name == "mimic-like") {
    // ICU-stay cohort size; dimension is a desk-scale stand-in.
    s.n = 21139;
    s.dim = 100;
    s.positive_rate = 0.13;
    s.class_separation = 3.0;
  } else {
    throw ValidationError("synthetic", "unknown cohort '" + name + "'");
  }
  return s;
}

std::vector<std::string> SyntheticSpec::Names() {
  return {"separable", "lced-like", "mimic-like"};
}

RawTable GenerateSyntheticTable(const SyntheticSpec& spec) {
  spec.Validate();
  std::mt19937_64 engine(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution positive(spec.positive_rate);

  Eigen::VectorXd direction(spec.dim);
  do {
    for (Index j = 0; j < spec.dim; ++j) direction(j) = gauss(engine);
  } while (direction.norm() == 0.0);
  direction.normalize();
  const Eigen::VectorXd half_gap = (spec.class_separation / 2.0) * direction;

  RawTable table;
  table.features.resize(spec.n, spec.dim);
  table.labels.resize(spec.n);
  for (Index i = 0; i < spec.n; ++i) {
    const double y = positive(engine) ? 1.0 : -1.0;
    table.labels(i) = y;
    for (Index j = 0; j < spec.dim; ++j) {
      table.features(i, j) = y * half_gap(j) + spec.noise_scale * gauss(engine);
    }
  }
  for (Index j = 0; j < spec.dim; ++j) {
    table.feature_names.push_back("x" + std::to_string(j));
  }
  return table;
}

Dataset GenerateSynthetic(const SyntheticSpec& spec) {
  return Preprocess(GenerateSyntheticTable(spec)).data;
}

}  // namespace fedpriv
