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

#ifndef FEDPRIV_PERTURBATION_H_
#define FEDPRIV_PERTURBATION_H_

#include "fedpriv/types.h"

namespace fedpriv {

// Random linear term and extra ridge added to a site's training objective:
//   J_priv(w) = J(w) + (delta / 2) |w|^2 + <b, w> / n.
struct PerturbationVector {
  Weights b;
  double delta = 0.0;
  // Budget left after the curvature slack; never above the requested epsilon.
  double epsilon_eff = 0.0;

  Index dim() const { return b.size(); }
};

}  // namespace fedpriv

#endif  // FEDPRIV_PERTURBATION_H_
