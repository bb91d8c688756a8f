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

// Objective perturbation for L2-regularized ERM with a smooth convex loss.
//
// A site that minimizes J(w) + (delta/2)|w|^2 + <b, w>/n, with b drawn from
// the density proportional to exp(-(eps'/2)|b|), releases an
// epsilon-differentially private minimizer provided every feature row has
// |x| <= 1, |l'| <= 1 and |l''| <= c.

#ifndef FEDPRIV_PRIVACY_H_
#define FEDPRIV_PRIVACY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fedpriv/loss.h"
#include "fedpriv/perturbation.h"
#include "fedpriv/types.h"

namespace fedpriv {

// Tolerance on the unit-ball requirement |x| <= 1.
inline constexpr double kUnitBallSlack = 1e-9;

struct PrivacyParams {
  double epsilon = 0.0;
  double lambda = 0.0;

  void Validate() const;
};

struct Slack {
  double epsilon_eff = 0.0;
  double delta = 0.0;
};

// Budget left after the curvature term, and the extra ridge needed when
// nothing is left:
//   eps' = eps - ln(1 + 2c/(n lambda) + c^2/(n lambda)^2)
//   eps' > 0:  delta = 0
//   otherwise: delta = c / (n (e^{eps/4} - 1)) - lambda,  eps' = eps / 2
Slack ComputeSlack(double epsilon, double c, Index n, double lambda);

// b = r u with r ~ Gamma(dim, 2/eps') and u uniform on the unit sphere.
// The radius is drawn first, so for a fixed seed the direction does not
// depend on eps'.
Eigen::VectorXd SampleNoise(Index dim, double epsilon_eff, std::uint64_t seed);

PerturbationVector MakePerturbation(const PrivacyParams& params,
                                    const LossKind& kind, Index n, Index dim,
                                    std::uint64_t seed);

struct PreconditionReport {
  std::vector<std::string> violations;
  // Rows whose L2 norm exceeds 1 + kUnitBallSlack.
  std::vector<Index> rows_outside_ball;
  double max_row_norm = 0.0;

  bool ok() const { return violations.empty(); }
  std::string Summary() const;
};

PreconditionReport ValidatePreconditions(const Dataset& data,
                                         const PrivacyParams& params,
                                         const LossKind& kind);

}  // namespace fedpriv

#endif  // FEDPRIV_PRIVACY_H_
