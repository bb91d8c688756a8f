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

// Command-line front end: run experiments, summarize them, generate synthetic
// cohorts, and check privacy preconditions on a CSV.
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 numerical divergence.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "fedpriv/data.h"
#include "fedpriv/errors.h"
#include "fedpriv/experiments.h"
#include "fedpriv/privacy.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDivergence = 4;

// Flags shared by run / sweep / compare. Values stay as text until merged
// with the config file so that flags override file entries key by key.
struct RunFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void Attach(CLI::App* app) {
    app->add_option("--config", config_path, "key=value config file");
    static const std::map<std::string, std::string> kHelp = {
        {"data", "input CSV (features plus a label column)"},
        {"synthetic", "named synthetic cohort: separable | lced-like | mimic-like"},
        {"data-seed", "seed for synthetic data generation"},
        {"label-column", "label column name (default: label)"},
        {"modes", "comma list of centralized, federated, federated_dp"},
        {"loss", "comma list of logistic, svm[:h], perceptron[:h]"},
        {"lambda", "L2 regularization strength"},
        {"epsilon-grid", "comma list of privacy budgets"},
        {"sites", "number of federated sites"},
        {"rounds", "federation rounds"},
        {"partition", "iid | skewed:<alpha>"},
        {"learning-rate", "gradient step size"},
        {"epochs", "local epochs per round"},
        {"batch-size", "mini-batch size, or 'all'"},
        {"tolerance", "relative loss change for early stopping"},
        {"seeds", "comma list or range such as 0..19"},
        {"cv-folds", "cross-validation folds on the training split (0 = off)"},
        {"train-fraction", "fraction of rows used for training"},
        {"out", "output CSV path"},
    };
    for (const auto& key : fedpriv::SettingKeys()) {
      const auto help = kHelp.find(key);
      options[key] = app->add_option("--" + key, values[key],
                                     help == kHelp.end() ? "" : help->second);
    }
    options["data"]->excludes(options["synthetic"]);
  }

  fedpriv::ExperimentConfig Resolve() const {
    fedpriv::Settings settings;
    if (!config_path.empty()) settings = fedpriv::LoadSettings(config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) settings[key] = values.at(key);
    }
    // A flag naming one data source replaces the file's choice of the other.
    if (options.at("data")->count() > 0) settings.erase("synthetic");
    if (options.at("synthetic")->count() > 0) settings.erase("data");
    return fedpriv::ConfigFromSettings(settings);
  }
};

template <typename Fn>
void WithOutput(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw fedpriv::DataError("cannot write " + path);
  write(out);
}

void WriteReport(const fedpriv::ExperimentConfig& cfg,
                 const std::vector<fedpriv::ResultRow>& rows,
                 const std::string& path) {
  WithOutput(path, [&](std::ostream& out) { fedpriv::WriteResults(rows, out); });
  if (!path.empty() && path != "-") {
    WithOutput(path + ".meta", [&](std::ostream& out) {
      fedpriv::WriteReportMetadata(cfg, out);
    });
  }
}

std::vector<fedpriv::ResultRow> RowsFor(const RunFlags& flags,
                                        const std::string& results_path,
                                        const std::string& report_path) {
  // Resolve even when summarizing a saved report so bad flags still fail.
  const auto cfg = flags.Resolve();
  if (!results_path.empty()) {
    std::ifstream in(results_path);
    if (!in) throw fedpriv::DataError("cannot open " + results_path);
    return fedpriv::ReadResults(in);
  }
  auto rows = fedpriv::RunExperiment(cfg);
  if (!report_path.empty()) WriteReport(cfg, rows, report_path);
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated learning with objective-perturbation differential "
               "privacy: experiment runner"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Run an experiment and write a CSV report");
  run_flags.Attach(run);

  RunFlags sweep_flags;
  std::string sweep_results, sweep_out, sweep_report;
  auto* sweep = app.add_subcommand(
      "sweep", "Mean/std held-out F1 of federated_dp runs per epsilon");
  sweep_flags.Attach(sweep);
  sweep->add_option("--results", sweep_results,
                    "summarize an existing report instead of running");
  sweep->add_option("--report", sweep_report, "also write the per-run report");
  // --out names the summary file for this subcommand.
  sweep_flags.options["out"]->description("summary CSV (default stdout)");

  RunFlags compare_flags;
  std::string compare_results, compare_report;
  auto* compare = app.add_subcommand(
      "compare", "Held-out F1 per mode and gap to centralized training");
  compare_flags.Attach(compare);
  compare->add_option("--results", compare_results,
                      "summarize an existing report instead of running");
  compare->add_option("--report", compare_report, "also write the per-run report");

  std::string gen_name = "separable", gen_out = "-";
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic cohort as CSV");
  gen->add_option("--synthetic", gen_name, "separable | lced-like | mimic-like");
  gen->add_option("--data-seed", gen_seed);
  gen->add_option("--out", gen_out, "output CSV (default stdout)");

  std::string val_data, val_label = "label", val_loss = "logistic";
  double val_epsilon = 0.1, val_lambda = 0.01;
  bool val_preprocess = false;
  auto* validate = app.add_subcommand(
      "validate", "Check differential-privacy preconditions on a CSV");
  validate->add_option("--data", val_data)->required();
  validate->add_option("--label-column", val_label);
  validate->add_option("--loss", val_loss);
  validate->add_option("--epsilon", val_epsilon);
  validate->add_option("--lambda", val_lambda);
  validate->add_flag("--preprocess", val_preprocess,
                     "append bias and scale to the unit ball before checking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      const auto cfg = run_flags.Resolve();
      const auto rows = fedpriv::RunExperiment(cfg);
      WriteReport(cfg, rows, cfg.output.string());
      std::cerr << "wrote " << rows.size() << " rows to " << cfg.output.string()
                << "\n";
    } else if (*sweep) {
      const auto rows = RowsFor(sweep_flags, sweep_results, sweep_report);
      const auto summary = fedpriv::EpsilonSweep(rows);
      const std::string out =
          sweep_flags.options["out"]->count() ? sweep_flags.values["out"] : "-";
      WithOutput(out, [&](std::ostream& o) { fedpriv::WriteSweep(summary, o); });
    } else if (*compare) {
      const auto rows = RowsFor(compare_flags, compare_results, compare_report);
      const auto summary = fedpriv::CompareModes(rows);
      for (const auto& r : summary) {
        if (r.mode == "WARNING") std::cerr << "warning: " << r.note << "\n";
      }
      const std::string out =
          compare_flags.options["out"]->count() ? compare_flags.values["out"] : "-";
      WithOutput(out,
                 [&](std::ostream& o) { fedpriv::WriteComparison(summary, o); });
    } else if (*gen) {
      const auto table = fedpriv::GenerateSyntheticTable(
          fedpriv::SyntheticSpec::Named(gen_name, gen_seed));
      WithOutput(gen_out, [&](std::ostream& o) { fedpriv::WriteCsv(table, o); });
    } else if (*validate) {
      const auto table = fedpriv::LoadCsv(val_data, val_label);
      const fedpriv::Dataset data =
          val_preprocess ? fedpriv::Preprocess(table).data
                         : fedpriv::Dataset(table.features, table.labels);
      const auto report = fedpriv::ValidatePreconditions(
          data, fedpriv::PrivacyParams{val_epsilon, val_lambda},
          fedpriv::LossKind::Parse(val_loss));
      std::cout << (report.ok() ? "PASS" : "FAIL") << ": " << report.Summary()
                << "\n";
      std::cout << "rows=" << data.size() << " dim=" << data.dim()
                << " max_row_norm=" << fedpriv::FormatReal(report.max_row_norm)
                << "\n";
      return report.ok() ? kExitOk : kExitData;
    }
  } catch (const fedpriv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fedpriv::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fedpriv::DivergenceError& e) {
    std::cerr << "numerical divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const fedpriv::Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
