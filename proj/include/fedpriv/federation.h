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

// In-process federated training. Each round the server broadcasts the global
// weights, every site runs local gradient descent on its own shard, and the
// server replaces the global weights with the sample-weighted average of the
// returned site weights.

#ifndef FEDPRIV_FEDERATION_H_
#define FEDPRIV_FEDERATION_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fedpriv/loss.h"
#include "fedpriv/optimizer.h"
#include "fedpriv/perturbation.h"
#include "fedpriv/privacy.h"
#include "fedpriv/types.h"

namespace fedpriv {

struct SiteId {
  int index = 0;
  friend auto operator<=>(const SiteId&, const SiteId&) = default;
};

struct Site {
  SiteId id;
  Dataset shard;
  // Drawn once per federation and reused in every round.
  std::optional<PerturbationVector> perturbation;
};

// Server -> site message.
struct Broadcast {
  int round = 0;
  Weights global_weights;
};

// Site -> server message.
struct SiteUpdate {
  Weights weights;
  Index sample_count = 0;
  SiteId site;
  double local_loss = 0.0;
};

class PartitionStrategy {
 public:
  enum class Kind { kIidEqual, kSizeSkewed };

  static PartitionStrategy IidEqual() { return {Kind::kIidEqual, 0.0}; }
  // Shard sizes follow a seeded Pareto draw with tail exponent alpha.
  static PartitionStrategy SizeSkewed(double alpha);
  // "iid" or "skewed:<alpha>".
  static PartitionStrategy Parse(const std::string& text);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string Name() const;

 private:
  PartitionStrategy(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  Kind kind_;
  double alpha_;
};

struct FederationConfig {
  int num_sites = 10;
  int rounds = 10;
  PartitionStrategy partition = PartitionStrategy::IidEqual();
  OptimizerConfig optimizer;
  std::optional<PrivacyParams> privacy;
  std::uint64_t master_seed = 0;

  void Validate() const;
};

struct RoundLog {
  int round = 0;
  Weights global_weights;
  // Unperturbed objective of the global weights on the union of all shards.
  double global_train_loss = 0.0;
  std::vector<double> per_site_losses;
};

struct FederationResult {
  Weights weights;
  std::vector<RoundLog> rounds;
  // True when the global loss stopped improving before the round cap.
  bool converged = false;
};

// Disjoint row-index sets, one per site, covering every row exactly once.
std::vector<std::vector<Index>> PartitionIndices(Index n,
                                                 const FederationConfig& cfg);

std::vector<Dataset> Partition(const Dataset& data,
                               const FederationConfig& cfg);

// Runs local gradient descent from the broadcast weights on the site's
// (perturbed, when it carries a perturbation) objective.
SiteUpdate LocalTrain(const Site& site, const Weights& global_w,
                      const LossKind& kind, double lambda,
                      const OptimizerConfig& cfg);

// Sum over sites of (n_i / sum_j n_j) w_i, reduced in ascending SiteId order.
Weights Aggregate(std::span<const SiteUpdate> updates);

// Mixing weights n_i / sum_j n_j in ascending SiteId order.
std::vector<double> AggregationWeights(std::span<const SiteUpdate> updates);

// Builds the sites: partitions `data` and, when privacy is configured, checks
// the mechanism preconditions on each shard and draws its perturbation.
std::vector<Site> MakeSites(const Dataset& data, const LossKind& kind,
                            double lambda, const FederationConfig& cfg);

FederationResult RunFederation(const Dataset& data, const LossKind& kind,
                               double lambda, const FederationConfig& cfg);

}  // namespace fedpriv

#endif  // FEDPRIV_FEDERATION_H_
