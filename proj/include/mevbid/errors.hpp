/*
 * Copyright 2026 The mevbid Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace mevbid {

inline constexpr const char* kVersion = "0.3.0";

// Input that violates a documented format or precondition (bad log line,
// duplicate bidder, out-of-range fraction). Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown or inconsistent configuration values. Also exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A metric whose denominator is zero (WR with N = 0, MPC with UB = 0).
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// NaN or Inf reached a gradient, loss or parameter.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called in the wrong lifecycle state (step after done, backward
// without forward).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mevbid
