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

#include "fedpriv/loss.h"

#include <cstdio>
#include <cstdlib>

namespace fedpriv {

LossKind LossKind::Parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  double h = kDefaultSmoothing;
  if (colon != std::string::npos) {
    const std::string width = text.substr(colon + 1);
    char* end = nullptr;
    h = std::strtod(width.c_str(), &end);
    if (width.empty() || end != width.c_str() + width.size()) {
      throw ValidationError("loss", "bad smoothing width in '" + text + "'");
    }
  }
  if (family == "logistic") {
    if (colon != std::string::npos) {
      throw ValidationError("loss", "logistic takes no smoothing width");
    }
    return Logistic();
  }
  if (family == "svm") return HuberHinge(h);
  if (family == "perceptron") return SmoothedPerceptron(h);
  throw ValidationError("loss", "unknown loss '" + text +
                                    "' (expected logistic, svm, perceptron)");
}

std::string LossKind::Name() const {
  switch (family_) {
    case Family::kLogistic:
      return "logistic";
    case Family::kHuberHinge:
    case Family::kSmoothedPerceptron: {
      std::string name =
          family_ == Family::kHuberHinge ? "svm" : "perceptron";
      if (h_ != kDefaultSmoothing) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ":%.17g", h_);
        name += buf;
      }
      return name;
    }
  }
  return "unknown";
}

}  // namespace fedpriv
