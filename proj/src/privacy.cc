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

#include "fedpriv/privacy.h"

#include <cmath>
#include <random>
#include <sstream>

#include "fedpriv/errors.h"

namespace fedpriv {

void PrivacyParams::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("epsilon", "must be finite and > 0");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda", "must be finite and > 0");
  }
}

Slack ComputeSlack(double epsilon, double c, Index n, double lambda) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon", "must be > 0");
  if (!(c > 0.0)) throw ValidationError("c", "must be > 0");
  if (n < 1) throw ValidationError("n", "must be >= 1");
  if (!(lambda > 0.0)) throw ValidationError("lambda", "must be > 0");

  const double ratio = c / (double(n) * lambda);
  // 1 + 2r + r^2 = (1 + r)^2
  Slack s;
  s.epsilon_eff = epsilon - 2.0 * std::log1p(ratio);
  if (s.epsilon_eff > 0.0) return s;
  s.delta = c / (double(n) * std::expm1(epsilon / 4.0)) - lambda;
  s.epsilon_eff = epsilon / 2.0;
  return s;
}

Eigen::VectorXd SampleNoise(Index dim, double epsilon_eff, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("dim", "must be >= 1");
  if (!(epsilon_eff > 0.0) || !std::isfinite(epsilon_eff)) {
    throw ValidationError("epsilon_eff", "must be finite and > 0");
  }
  std::mt19937_64 engine(seed);
  std::gamma_distribution<double> radius(double(dim), 2.0 / epsilon_eff);
  const double r = radius(engine);

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd u(dim);
  double norm = 0.0;
  do {
    for (Index i = 0; i < dim; ++i) u(i) = gauss(engine);
    norm = u.norm();
  } while (norm == 0.0);
  return (r / norm) * u;
}

PerturbationVector MakePerturbation(const PrivacyParams& params,
                                    const LossKind& kind, Index n, Index dim,
                                    std::uint64_t seed) {
  params.Validate();
  const Slack slack =
      ComputeSlack(params.epsilon, SmoothnessBound(kind), n, params.lambda);
  PerturbationVector p;
  p.b = SampleNoise(dim, slack.epsilon_eff, seed);
  p.delta = slack.delta;
  p.epsilon_eff = slack.epsilon_eff;
  return p;
}

std::string PreconditionReport::Summary() const {
  if (ok()) return "all privacy preconditions hold";
  std::ostringstream out;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << violations[i];
  }
  return out.str();
}

PreconditionReport ValidatePreconditions(const Dataset& data,
                                         const PrivacyParams& params,
                                         const LossKind& kind) {
  PreconditionReport report;
  if (data.size() > 0) {
    const Eigen::VectorXd norms = data.features().rowwise().norm();
    report.max_row_norm = norms.maxCoeff();
    for (Index i = 0; i < norms.size(); ++i) {
      if (!(norms(i) <= 1.0 + kUnitBallSlack)) {
        report.rows_outside_ball.push_back(i);
      }
    }
  }
  if (!report.rows_outside_ball.empty()) {
    std::ostringstream msg;
    msg << "feature norm exceeds 1 in " << report.rows_outside_ball.size()
        << " row(s), first at row " << report.rows_outside_ball.front()
        << " (max norm " << report.max_row_norm << ")";
    report.violations.push_back(msg.str());
  }
  if (data.empty()) report.violations.push_back("dataset is empty");
  if (!(params.lambda > 0.0)) {
    report.violations.push_back(
        "lambda must be > 0 (objective must be strongly convex)");
  }
  if (!(params.epsilon > 0.0)) {
    report.violations.push_back("epsilon must be > 0");
  }
  const double c = SmoothnessBound(kind);
  if (!std::isfinite(c) || !(c > 0.0)) {
    report.violations.push_back("loss has no finite smoothness bound");
  }
  return report;
}

}  // namespace fedpriv
