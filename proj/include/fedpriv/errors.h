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

#ifndef FEDPRIV_ERRORS_H_
#define FEDPRIV_ERRORS_H_

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <utility>

namespace fedpriv {

// Base for every error raised by the library. Callers that only need a message
// can catch this; the CLI maps the concrete subclasses to exit codes.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  // Prefixes the message, e.g. with the run that failed. Use with `throw;` to
  // keep the dynamic type.
  void AddContext(const std::string& context) {
    message_ = context + ": " + message_;
  }

 private:
  std::string message_;
};

// A vector or matrix did not have the dimension an operation requires.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::string what, std::int64_t expected,
                    std::int64_t actual)
      : Error(what + ": expected dimension " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::int64_t expected() const { return expected_; }
  std::int64_t actual() const { return actual_; }

 private:
  std::int64_t expected_;
  std::int64_t actual_;
};

// A scalar parameter is outside its domain.
class ValidationError : public Error {
 public:
  ValidationError(std::string parameter, const std::string& reason)
      : Error("invalid " + parameter + ": " + reason),
        parameter_(std::move(parameter)) {}

  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

// Input data is malformed or cannot support the requested operation.
class DataError : public Error {
 public:
  using Error::Error;
};

// Experiment or CLI configuration is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Gradient descent produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(int epoch, std::optional<int> site = std::nullopt)
      : Error(Describe(epoch, site)), epoch_(epoch), site_(site) {}

  int epoch() const { return epoch_; }
  std::optional<int> site() const { return site_; }

  DivergenceError WithSite(int site) const { return {epoch_, site}; }

 private:
  static std::string Describe(int epoch, std::optional<int> site) {
    std::string msg =
        "non-finite loss at epoch " + std::to_string(epoch);
    if (site) msg += " on site " + std::to_string(*site);
    return msg;
  }

  int epoch_;
  std::optional<int> site_;
};

}  // namespace fedpriv

#endif  // FEDPRIV_ERRORS_H_
