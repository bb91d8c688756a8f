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

#include "fedpriv/experiments.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "fedpriv/errors.h"
#include "fedpriv/metrics.h"
#include "fedpriv/seeding.h"

namespace fedpriv {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseRealSetting(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": not a real number: '" + text + "'");
  }
  return v;
}

template <typename Int>
Int ParseIntSetting(const std::string& key, const std::string& text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": not an integer: '" + text + "'");
  }
  return v;
}

// "1,2,5" or inclusive ranges "0..19", mixed freely.
std::vector<std::uint64_t> ParseSeeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : SplitList(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(ParseIntSetting<std::uint64_t>("seeds", item));
      continue;
    }
    const auto lo = ParseIntSetting<std::uint64_t>("seeds", item.substr(0, dots));
    const auto hi = ParseIntSetting<std::uint64_t>("seeds", item.substr(dots + 2));
    if (hi < lo) throw ConfigError("seeds: empty range '" + item + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

std::string JoinReals(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatReal(values[i]);
  }
  return out;
}

std::uint64_t Fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> SortedGrid(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Settings EffectiveSettings(const ExperimentConfig& cfg) {
  Settings s;
  if (cfg.source.csv) {
    s["data"] = cfg.source.csv->string();
    s["label-column"] = cfg.source.label_column;
  } else {
    s["synthetic"] = cfg.source.synthetic;
    s["data-seed"] = std::to_string(cfg.source.data_seed);
  }
  std::string losses;
  for (size_t i = 0; i < cfg.losses.size(); ++i) {
    losses += (i ? "," : "") + cfg.losses[i].Name();
  }
  s["loss"] = losses;
  std::string modes;
  for (size_t i = 0; i < cfg.modes.size(); ++i) {
    modes += (i ? "," : "") + ModeName(cfg.modes[i]);
  }
  s["modes"] = modes;
  s["lambda"] = FormatReal(cfg.lambda);
  s["epsilon-grid"] = JoinReals(SortedGrid(cfg.epsilon_grid));
  s["sites"] = std::to_string(cfg.num_sites);
  s["rounds"] = std::to_string(cfg.rounds);
  s["partition"] = cfg.partition.Name();
  s["learning-rate"] = FormatReal(cfg.optimizer.learning_rate);
  s["epochs"] = std::to_string(cfg.optimizer.epochs);
  s["batch-size"] = cfg.optimizer.batch_size == OptimizerConfig::kFullBatch
                        ? "all"
                        : std::to_string(cfg.optimizer.batch_size);
  s["tolerance"] = FormatReal(cfg.optimizer.tolerance);
  std::string seeds;
  for (size_t i = 0; i < cfg.seeds.size(); ++i) {
    seeds += (i ? "," : "") + std::to_string(cfg.seeds[i]);
  }
  s["seeds"] = seeds;
  s["cv-folds"] = std::to_string(cfg.cv_folds);
  s["train-fraction"] = FormatReal(cfg.train_fraction);
  return s;
}

struct Trained {
  Weights weights;
  int rounds_run = 0;
  double final_train_loss = 0.0;
};

Trained Train(const ExperimentConfig& cfg, Mode mode, const LossKind& loss,
              std::optional<double> epsilon, std::uint64_t seed,
              const Dataset& train) {
  Trained out;
  if (mode == Mode::kCentralized) {
    OptimizerConfig central = cfg.optimizer;
    central.epochs = cfg.optimizer.epochs * cfg.rounds;
    central.seed = DeriveSeed(seed, {stream::kCentralTraining});
    TrainResult r = Minimize(train, loss, cfg.lambda, nullptr,
                             Weights::Zero(train.dim()).eval(), central);
    out.weights = std::move(r.weights);
    out.rounds_run = 1;
    out.final_train_loss = Objective(out.weights, train, loss, cfg.lambda);
    return out;
  }
  FederationConfig fed;
  fed.num_sites = cfg.num_sites;
  fed.rounds = cfg.rounds;
  fed.partition = cfg.partition;
  fed.optimizer = cfg.optimizer;
  fed.master_seed = DeriveSeed(seed, {stream::kFederation});
  if (mode == Mode::kFederatedDp) fed.privacy = PrivacyParams{*epsilon, cfg.lambda};
  FederationResult r = RunFederation(train, loss, cfg.lambda, fed);
  out.weights = std::move(r.weights);
  out.rounds_run = static_cast<int>(r.rounds.size());
  out.final_train_loss = r.rounds.back().global_train_loss;
  return out;
}

std::string RunId(Mode mode, const LossKind& loss,
                  std::optional<double> epsilon, std::uint64_t seed) {
  std::string id = ModeName(mode) + "/" + loss.Name();
  if (epsilon) id += "/eps=" + FormatReal(*epsilon);
  return id + "/seed=" + std::to_string(seed);
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

// Sample standard deviation; 0 for a single value.
MeanStd Summarize(const std::vector<double>& v) {
  MeanStd s;
  for (double x : v) s.mean += x;
  s.mean /= double(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / double(v.size() - 1));
  }
  return s;
}

}  // namespace

std::string FormatReal(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kCentralized:
      return "centralized";
    case Mode::kFederated:
      return "federated";
    case Mode::kFederatedDp:
      return "federated_dp";
  }
  return "unknown";
}

Mode ParseMode(const std::string& text) {
  const std::string m = Lower(text);
  if (m == "centralized") return Mode::kCentralized;
  if (m == "federated") return Mode::kFederated;
  if (m == "federated_dp" || m == "federated-dp") return Mode::kFederatedDp;
  throw ConfigError("unknown mode '" + text +
                    "' (expected centralized, federated, federated_dp)");
}

void ExperimentConfig::Validate() const {
  if (modes.empty()) throw ConfigError("modes: at least one mode required");
  if (std::set<Mode>(modes.begin(), modes.end()).size() != modes.size()) {
    throw ConfigError("modes: duplicate mode");
  }
  if (losses.empty()) throw ConfigError("loss: at least one loss required");
  for (size_t i = 0; i < losses.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (losses[i] == losses[j]) throw ConfigError("loss: duplicate loss");
    }
  }
  if (!(lambda > 0.0)) throw ConfigError("lambda: must be > 0");
  const bool dp = std::find(modes.begin(), modes.end(), Mode::kFederatedDp) !=
                  modes.end();
  if (dp && epsilon_grid.empty()) {
    throw ConfigError("epsilon-grid: required for federated_dp");
  }
  for (double eps : epsilon_grid) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw ConfigError("epsilon-grid: every epsilon must be finite and > 0");
    }
  }
  if (num_sites < 1) throw ConfigError("sites: must be >= 1");
  if (rounds < 1) throw ConfigError("rounds: must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds: at least one seed required");
  if (cv_folds != 0 && cv_folds < 2) {
    throw ConfigError("cv-folds: must be 0 (disabled) or >= 2");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train-fraction: must lie in (0, 1)");
  }
  try {
    optimizer.Validate();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

std::string ExperimentConfig::Canonical() const {
  std::string out;
  for (const auto& [key, value] : EffectiveSettings(*this)) {
    out += key + "=" + value + "\n";
  }
  return out;
}

std::string ExperimentConfig::Hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a(Canonical())));
  return buf;
}

const std::vector<std::string>& SettingKeys() {
  static const std::vector<std::string> keys = {
      "data",          "synthetic",  "data-seed", "label-column",
      "modes",         "loss",       "lambda",    "epsilon-grid",
      "sites",         "rounds",     "partition", "learning-rate",
      "epochs",        "batch-size", "tolerance", "seeds",
      "cv-folds",      "train-fraction", "out"};
  return keys;
}

Settings ParseSettings(std::istream& in, const std::string& source) {
  const auto& keys = SettingKeys();
  Settings settings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    settings[key] = Trim(line.substr(eq + 1));
  }
  return settings;
}

Settings LoadSettings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return ParseSettings(in, path.string());
}

ExperimentConfig ConfigFromSettings(const Settings& settings) {
  const auto& keys = SettingKeys();
  for (const auto& [key, value] : settings) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  const auto get = [&](const std::string& key) -> const std::string* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };
  try {
    if (get("data") && get("synthetic")) {
      throw ConfigError("data and synthetic are mutually exclusive");
    }
    if (const auto* v = get("data")) cfg.source.csv = *v;
    if (const auto* v = get("synthetic")) {
      SyntheticSpec::Named(*v);
      cfg.source.synthetic = *v;
    }
    if (const auto* v = get("data-seed")) {
      cfg.source.data_seed = ParseIntSetting<std::uint64_t>("data-seed", *v);
    }
    if (const auto* v = get("label-column")) cfg.source.label_column = *v;
    if (const auto* v = get("modes")) {
      cfg.modes.clear();
      for (const auto& m : SplitList(*v)) cfg.modes.push_back(ParseMode(m));
    }
    if (const auto* v = get("loss")) {
      cfg.losses.clear();
      for (const auto& l : SplitList(*v)) cfg.losses.push_back(LossKind::Parse(l));
    }
    if (const auto* v = get("lambda")) cfg.lambda = ParseRealSetting("lambda", *v);
    if (const auto* v = get("epsilon-grid")) {
      cfg.epsilon_grid.clear();
      for (const auto& e : SplitList(*v)) {
        cfg.epsilon_grid.push_back(ParseRealSetting("epsilon-grid", e));
      }
    }
    if (const auto* v = get("sites")) cfg.num_sites = ParseIntSetting<int>("sites", *v);
    if (const auto* v = get("rounds")) cfg.rounds = ParseIntSetting<int>("rounds", *v);
    if (const auto* v = get("partition")) cfg.partition = PartitionStrategy::Parse(*v);
    if (const auto* v = get("learning-rate")) {
      cfg.optimizer.learning_rate = ParseRealSetting("learning-rate", *v);
    }
    if (const auto* v = get("epochs")) {
      cfg.optimizer.epochs = ParseIntSetting<int>("epochs", *v);
    }
    if (const auto* v = get("batch-size")) {
      cfg.optimizer.batch_size =
          Lower(*v) == "all" ? OptimizerConfig::kFullBatch
                             : ParseIntSetting<Index>("batch-size", *v);
      if (cfg.optimizer.batch_size == 0 && Lower(*v) != "all") {
        throw ConfigError("batch-size: must be positive or 'all'");
      }
    }
    if (const auto* v = get("tolerance")) {
      cfg.optimizer.tolerance = ParseRealSetting("tolerance", *v);
    }
    if (const auto* v = get("seeds")) cfg.seeds = ParseSeeds(*v);
    if (const auto* v = get("cv-folds")) {
      cfg.cv_folds = ParseIntSetting<int>("cv-folds", *v);
    }
    if (const auto* v = get("train-fraction")) {
      cfg.train_fraction = ParseRealSetting("train-fraction", *v);
    }
    if (const auto* v = get("out")) cfg.output = *v;
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  cfg.Validate();
  return cfg;
}

Dataset LoadExperimentData(const ExperimentConfig& cfg) {
  if (cfg.source.csv) {
    return Preprocess(LoadCsv(*cfg.source.csv, cfg.source.label_column)).data;
  }
  return GenerateSynthetic(
      SyntheticSpec::Named(cfg.source.synthetic, cfg.source.data_seed));
}

std::vector<ResultRow> RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  return RunExperiment(cfg, LoadExperimentData(cfg));
}

std::vector<ResultRow> RunExperiment(const ExperimentConfig& cfg,
                                     const Dataset& data) {
  cfg.Validate();
  const std::string hash = cfg.Hash();
  const std::vector<double> grid = SortedGrid(cfg.epsilon_grid);
  std::vector<ResultRow> rows;

  for (Mode mode : cfg.modes) {
    std::vector<std::optional<double>> epsilons = {std::nullopt};
    if (mode == Mode::kFederatedDp) {
      epsilons.assign(grid.begin(), grid.end());
    }
    for (const LossKind& loss : cfg.losses) {
      for (const auto& epsilon : epsilons) {
        for (std::uint64_t seed : cfg.seeds) {
          const std::string run_id = RunId(mode, loss, epsilon, seed);
          try {
            const TrainTest split = TrainTestSplit(
                data, cfg.train_fraction, DeriveSeed(seed, {stream::kSplit}));

            const auto evaluate = [&](int fold, const Dataset& train,
                                      const Dataset& eval) {
              const auto start = std::chrono::steady_clock::now();
              const Trained model = Train(cfg, mode, loss, epsilon, seed, train);
              const auto cm = ConfusionMatrix::Count(
                  PredictAll(model.weights, eval), Labels(eval));
              ResultRow row;
              row.run_id = run_id;
              row.mode = mode;
              row.loss_kind = loss.Name();
              row.epsilon = epsilon;
              row.num_sites = mode == Mode::kCentralized ? 1 : cfg.num_sites;
              row.partition_strategy =
                  mode == Mode::kCentralized ? "none" : cfg.partition.Name();
              row.rounds_run = model.rounds_run;
              row.fold = fold;
              row.seed = seed;
              row.f1 = cm.F1();
              row.precision = cm.Precision();
              row.recall = cm.Recall();
              row.final_train_loss = model.final_train_loss;
              row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
              row.config_hash = hash;
              rows.push_back(std::move(row));
            };

            if (cfg.cv_folds >= 2) {
              const auto folds = KFold(split.train, cfg.cv_folds,
                                       DeriveSeed(seed, {stream::kFolds}));
              for (size_t f = 0; f < folds.size(); ++f) {
                evaluate(static_cast<int>(f), folds[f].train, folds[f].validation);
              }
            }
            evaluate(ResultRow::kHoldoutFold, split.train, split.test);
          } catch (Error& e) {
            e.AddContext("run " + run_id);
            throw;
          }
        }
      }
    }
  }
  return rows;
}

const std::vector<std::string>& ResultColumns() {
  static const std::vector<std::string> columns = {
      "run_id", "mode",   "loss_kind", "epsilon",          "num_sites",
      "partition_strategy", "rounds_run", "fold",  "seed", "f1",
      "precision", "recall", "final_train_loss", "wall_ms", "config_hash"};
  return columns;
}

void WriteResults(std::span<const ResultRow> rows, std::ostream& out) {
  const auto& columns = ResultColumns();
  for (size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const ResultRow& r : rows) {
    out << r.run_id << ',' << ModeName(r.mode) << ',' << r.loss_kind << ','
        << (r.epsilon ? FormatReal(*r.epsilon) : "") << ',' << r.num_sites
        << ',' << r.partition_strategy << ',' << r.rounds_run << ','
        << (r.holdout() ? std::string("holdout") : std::to_string(r.fold))
        << ',' << r.seed << ',' << FormatReal(r.f1) << ','
        << FormatReal(r.precision) << ',' << FormatReal(r.recall) << ','
        << FormatReal(r.final_train_loss) << ',' << r.wall_ms << ','
        << r.config_hash << '\n';
  }
}

std::vector<ResultRow> ReadResults(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("results: missing header");
  const auto header = SplitList(Trim(line));
  if (header != ResultColumns()) {
    throw DataError("results: header does not match the result schema");
  }
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != header.size()) {
      throw DataError("results: line " + std::to_string(line_no) +
                      " has the wrong number of fields");
    }
    try {
      ResultRow r;
      r.run_id = f[0];
      r.mode = ParseMode(f[1]);
      r.loss_kind = f[2];
      if (!f[3].empty()) r.epsilon = ParseRealSetting("epsilon", f[3]);
      r.num_sites = ParseIntSetting<int>("num_sites", f[4]);
      r.partition_strategy = f[5];
      r.rounds_run = ParseIntSetting<int>("rounds_run", f[6]);
      r.fold = f[7] == "holdout" ? ResultRow::kHoldoutFold
                                 : ParseIntSetting<int>("fold", f[7]);
      r.seed = ParseIntSetting<std::uint64_t>("seed", f[8]);
      r.f1 = ParseRealSetting("f1", f[9]);
      r.precision = ParseRealSetting("precision", f[10]);
      r.recall = ParseRealSetting("recall", f[11]);
      r.final_train_loss = ParseRealSetting("final_train_loss", f[12]);
      r.wall_ms = ParseIntSetting<std::int64_t>("wall_ms", f[13]);
      r.config_hash = f[14];
      rows.push_back(std::move(r));
    } catch (const ConfigError& e) {
      throw DataError("results: line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return rows;
}

void WriteReportMetadata(const ExperimentConfig& cfg, std::ostream& out) {
  out << "config_hash=" << cfg.Hash() << '\n';
  for (const auto& [key, value] : EffectiveSettings(cfg)) {
    out << "config." << key << '=' << value << '\n';
  }
  out << "privacy_accounting=per-site epsilon; one perturbation draw per site "
         "per federation, reused every round; disjoint shards (parallel "
         "composition); intermediate round models are not covered by the "
         "one-shot guarantee\n";
  out << "feature_scaling=one global factor computed on the pooled data "
         "before partitioning (a real deployment could not compute it)\n";
  out << "evaluation=k-fold cross-validation on the training portion, final "
         "F1 on the held-out portion (fold=holdout)\n";
  out << "centralized_epoch_budget=rounds*epochs\n";
  out << "federated_stopping=round cap plus relative-improvement tolerance on "
         "the unperturbed global training loss; rounds_run records which "
         "fired\n";
}

std::vector<SweepRow> EpsilonSweep(std::span<const ResultRow> rows) {
  // Loss order follows first appearance in the report.
  std::vector<std::string> losses;
  std::map<std::pair<std::string, double>, std::vector<double>> groups;
  for (const ResultRow& r : rows) {
    if (r.mode != Mode::kFederatedDp || !r.holdout() || !r.epsilon) continue;
    if (std::find(losses.begin(), losses.end(), r.loss_kind) == losses.end()) {
      losses.push_back(r.loss_kind);
    }
    groups[{r.loss_kind, *r.epsilon}].push_back(r.f1);
  }
  if (groups.empty()) {
    throw DataError("epsilon sweep: no federated_dp held-out rows");
  }
  std::vector<SweepRow> out;
  for (const auto& [key, f1s] : groups) {
    const MeanStd s = Summarize(f1s);
    out.push_back({key.first, key.second, static_cast<int>(f1s.size()), s.mean,
                   s.stddev});
  }
  const auto loss_rank = [&](const std::string& l) {
    return std::find(losses.begin(), losses.end(), l) - losses.begin();
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const SweepRow& a, const SweepRow& b) {
                     if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
                     return loss_rank(a.loss_kind) < loss_rank(b.loss_kind);
                   });
  return out;
}

std::vector<SweepRow> EpsilonSweep(const ExperimentConfig& cfg) {
  if (std::find(cfg.modes.begin(), cfg.modes.end(), Mode::kFederatedDp) ==
      cfg.modes.end()) {
    throw ConfigError("epsilon sweep requires the federated_dp mode");
  }
  const auto rows = RunExperiment(cfg);
  return EpsilonSweep(rows);
}

void WriteSweep(std::span<const SweepRow> rows, std::ostream& out) {
  out << "loss_kind,epsilon,runs,mean_f1,std_f1\n";
  for (const SweepRow& r : rows) {
    out << r.loss_kind << ',' << FormatReal(r.epsilon) << ',' << r.runs << ','
        << FormatReal(r.mean_f1) << ',' << FormatReal(r.std_f1) << '\n';
  }
}

std::vector<ComparisonRow> CompareModes(std::span<const ResultRow> rows) {
  std::vector<std::string> losses;
  std::map<std::pair<std::string, Mode>, std::vector<double>> groups;
  std::set<Mode> modes;
  for (const ResultRow& r : rows) {
    if (!r.holdout()) continue;
    if (std::find(losses.begin(), losses.end(), r.loss_kind) == losses.end()) {
      losses.push_back(r.loss_kind);
    }
    groups[{r.loss_kind, r.mode}].push_back(r.f1);
    modes.insert(r.mode);
  }
  if (modes.size() < 2) {
    throw DataError("mode comparison needs at least two modes in the results");
  }
  std::vector<ComparisonRow> out;
  for (const std::string& loss : losses) {
    const auto base = groups.find({loss, Mode::kCentralized});
    std::optional<double> baseline;
    if (base != groups.end()) baseline = Summarize(base->second).mean;
    for (Mode mode : {Mode::kCentralized, Mode::kFederated, Mode::kFederatedDp}) {
      const auto it = groups.find({loss, mode});
      if (it == groups.end()) continue;
      const MeanStd s = Summarize(it->second);
      ComparisonRow row{loss, ModeName(mode), static_cast<int>(it->second.size()),
                        s.mean, s.stddev, std::nullopt, ""};
      if (baseline) row.gap_vs_centralized = s.mean - *baseline;
      out.push_back(std::move(row));
    }
    if (!baseline) {
      out.push_back({loss, "WARNING", 0, 0.0, 0.0, std::nullopt,
                     "no centralized baseline; gaps left empty"});
    }
  }
  return out;
}

void WriteComparison(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << "loss_kind,mode,runs,mean_f1,std_f1,gap_vs_centralized,note\n";
  for (const ComparisonRow& r : rows) {
    out << r.loss_kind << ',' << r.mode << ',' << r.runs << ','
        << FormatReal(r.mean_f1) << ',' << FormatReal(r.std_f1) << ','
        << (r.gap_vs_centralized ? FormatReal(*r.gap_vs_centralized) : "")
        << ',' << r.note << '\n';
  }
}

}  // namespace fedpriv
