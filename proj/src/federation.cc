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

#include "fedpriv/federation.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <numeric>
#include <random>

#include "fedpriv/errors.h"
#include "fedpriv/seeding.h"

namespace fedpriv {

PartitionStrategy PartitionStrategy::SizeSkewed(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha", "size-skew exponent must be finite and > 0");
  }
  return {Kind::kSizeSkewed, alpha};
}

PartitionStrategy PartitionStrategy::Parse(const std::string& text) {
  if (text == "iid") return IidEqual();
  const std::string prefix = "skewed:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string num = text.substr(prefix.size());
    char* end = nullptr;
    const double alpha = std::strtod(num.c_str(), &end);
    if (!num.empty() && end == num.c_str() + num.size()) {
      return SizeSkewed(alpha);
    }
  }
  throw ValidationError("partition",
                        "expected 'iid' or 'skewed:<alpha>', got '" + text + "'");
}

std::string PartitionStrategy::Name() const {
  if (kind_ == Kind::kIidEqual) return "iid";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "skewed:%.17g", alpha_);
  return buf;
}

void FederationConfig::Validate() const {
  if (num_sites < 1) throw ValidationError("num_sites", "must be >= 1");
  if (rounds < 1) throw ValidationError("rounds", "must be >= 1");
  optimizer.Validate();
  if (privacy) privacy->Validate();
}

namespace {

// Shard sizes for the size-skewed strategy: every site gets the floor, the
// rest is split in proportion to Pareto(alpha) draws by largest remainder.
std::vector<Index> SkewedSizes(Index n, int sites, double alpha,
                               std::mt19937_64& engine) {
  const Index floor_size =
      std::max<Index>(2, static_cast<Index>(std::ceil(0.01 * double(n))));
  if (floor_size * sites > n) {
    throw DataError("cannot give " + std::to_string(sites) +
                    " sites at least " + std::to_string(floor_size) +
                    " examples each from " + std::to_string(n));
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> mass(static_cast<size_t>(sites));
  for (double& m : mass) m = std::pow(1.0 - unif(engine), -1.0 / alpha);
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);

  const Index spare = n - floor_size * sites;
  std::vector<Index> sizes(static_cast<size_t>(sites), floor_size);
  std::vector<std::pair<double, int>> fractions;
  Index assigned = 0;
  for (int i = 0; i < sites; ++i) {
    const double share = double(spare) * mass[i] / total;
    const Index whole = static_cast<Index>(std::floor(share));
    sizes[i] += whole;
    assigned += whole;
    fractions.emplace_back(share - double(whole), i);
  }
  std::stable_sort(fractions.begin(), fractions.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (Index k = 0; k < spare - assigned; ++k) {
    ++sizes[fractions[static_cast<size_t>(k % sites)].second];
  }
  return sizes;
}

}  // namespace

std::vector<std::vector<Index>> PartitionIndices(Index n,
                                                 const FederationConfig& cfg) {
  cfg.Validate();
  const int sites = cfg.num_sites;
  if (n < sites) {
    throw DataError("cannot split " + std::to_string(n) + " examples across " +
                    std::to_string(sites) + " sites");
  }
  std::mt19937_64 engine(DeriveSeed(cfg.master_seed, {stream::kPartition}));
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), engine);

  std::vector<Index> sizes;
  if (cfg.partition.kind() == PartitionStrategy::Kind::kIidEqual) {
    sizes.assign(static_cast<size_t>(sites), n / sites);
    for (Index i = 0; i < n % sites; ++i) ++sizes[static_cast<size_t>(i)];
  } else {
    sizes = SkewedSizes(n, sites, cfg.partition.alpha(), engine);
  }

  std::vector<std::vector<Index>> shards(static_cast<size_t>(sites));
  auto it = order.begin();
  for (int i = 0; i < sites; ++i) {
    shards[i].assign(it, it + sizes[i]);
    // Membership is random; row order within a shard follows the input.
    std::sort(shards[i].begin(), shards[i].end());
    it += sizes[i];
  }
  return shards;
}

std::vector<Dataset> Partition(const Dataset& data,
                               const FederationConfig& cfg) {
  std::vector<Dataset> out;
  for (const auto& rows : PartitionIndices(data.size(), cfg)) {
    out.push_back(data.Subset(rows));
  }
  return out;
}

SiteUpdate LocalTrain(const Site& site, const Weights& global_w,
                      const LossKind& kind, double lambda,
                      const OptimizerConfig& cfg) {
  const PerturbationVector* perturb =
      site.perturbation ? &*site.perturbation : nullptr;
  SiteUpdate update;
  update.site = site.id;
  update.sample_count = site.shard.size();
  try {
    TrainResult trained =
        Minimize(site.shard, kind, lambda, perturb, global_w, cfg);
    update.local_loss = trained.loss_history.empty()
                            ? Objective(global_w, site.shard, kind, lambda,
                                        perturb)
                            : trained.loss_history.back();
    update.weights = std::move(trained.weights);
  } catch (const DivergenceError& e) {
    throw e.WithSite(site.id.index);
  }
  return update;
}

namespace {

std::vector<const SiteUpdate*> CanonicalOrder(
    std::span<const SiteUpdate> updates) {
  if (updates.empty()) throw ValidationError("updates", "nothing to aggregate");
  std::vector<const SiteUpdate*> order;
  for (const auto& u : updates) order.push_back(&u);
  std::sort(order.begin(), order.end(),
            [](const SiteUpdate* a, const SiteUpdate* b) {
              return a->site < b->site;
            });
  const Index dim = order.front()->weights.size();
  for (size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && order[i]->site == order[i - 1]->site) {
      throw ValidationError("updates", "duplicate site id " +
                                           std::to_string(order[i]->site.index));
    }
    if (order[i]->weights.size() != dim) {
      throw DimensionMismatch("site update weights", dim,
                              order[i]->weights.size());
    }
    if (order[i]->sample_count < 1) {
      throw ValidationError("sample_count", "must be >= 1");
    }
  }
  return order;
}

}  // namespace

std::vector<double> AggregationWeights(std::span<const SiteUpdate> updates) {
  const auto order = CanonicalOrder(updates);
  Index total = 0;
  for (const SiteUpdate* u : order) total += u->sample_count;
  std::vector<double> weights;
  for (const SiteUpdate* u : order) {
    weights.push_back(double(u->sample_count) / double(total));
  }
  return weights;
}

Weights Aggregate(std::span<const SiteUpdate> updates) {
  const auto order = CanonicalOrder(updates);
  const std::vector<double> mix = AggregationWeights(updates);
  Weights global = Weights::Zero(order.front()->weights.size());
  for (size_t i = 0; i < order.size(); ++i) {
    global += mix[i] * order[i]->weights;
  }
  return global;
}

std::vector<Site> MakeSites(const Dataset& data, const LossKind& kind,
                            double lambda, const FederationConfig& cfg) {
  cfg.Validate();
  if (cfg.privacy && cfg.privacy->lambda != lambda) {
    throw ConfigError("privacy lambda does not match the training lambda");
  }
  std::vector<Dataset> shards = Partition(data, cfg);
  std::vector<Site> sites;
  for (int i = 0; i < cfg.num_sites; ++i) {
    Site site{SiteId{i}, std::move(shards[i]), std::nullopt};
    if (cfg.privacy) {
      const PreconditionReport report =
          ValidatePreconditions(site.shard, *cfg.privacy, kind);
      if (!report.ok()) {
        throw DataError("site " + std::to_string(i) +
                        " violates privacy preconditions: " + report.Summary());
      }
      site.perturbation = MakePerturbation(
          *cfg.privacy, kind, site.shard.size(), site.shard.dim(),
          DeriveSeed(cfg.master_seed,
                     {stream::kPerturbation, static_cast<std::uint64_t>(i)}));
    }
    sites.push_back(std::move(site));
  }
  return sites;
}

FederationResult RunFederation(const Dataset& data, const LossKind& kind,
                               double lambda, const FederationConfig& cfg) {
  const std::vector<Site> sites = MakeSites(data, kind, lambda, cfg);

  FederationResult result;
  result.weights = Weights::Zero(data.dim());
  std::vector<double> global_losses;
  for (int round = 0; round < cfg.rounds; ++round) {
    const Broadcast message{round, result.weights};

    std::vector<SiteUpdate> updates;
    updates.reserve(sites.size());
    for (const Site& site : sites) {
      OptimizerConfig local = cfg.optimizer;
      local.seed = DeriveSeed(cfg.master_seed,
                              {stream::kLocalTraining,
                               static_cast<std::uint64_t>(round),
                               static_cast<std::uint64_t>(site.id.index)});
      updates.push_back(
          LocalTrain(site, message.global_weights, kind, lambda, local));
    }
    result.weights = Aggregate(updates);

    RoundLog log;
    log.round = round;
    log.global_weights = result.weights;
    log.global_train_loss = Objective(result.weights, data, kind, lambda);
    if (!std::isfinite(log.global_train_loss)) throw DivergenceError(round);
    for (const auto& u : updates) log.per_site_losses.push_back(u.local_loss);
    global_losses.push_back(log.global_train_loss);
    result.rounds.push_back(std::move(log));

    if (HasConverged(global_losses, cfg.optimizer.tolerance)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace fedpriv
