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

// Shared-trunk actor-critic: one DenseNetwork whose linear output layer has
// three rows, (raw alpha, raw beta) for the Beta policy and the state value.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mevbid/adam.hpp"
#include "mevbid/beta.hpp"
#include "mevbid/dense_network.hpp"
#include "mevbid/env.hpp"
#include "mevbid/rng.hpp"

namespace mevbid {

struct PolicyOutput {
  BetaShape shape;
  double value = 0.0;
};

struct ActionSample {
  double action = 0.0;
  double log_prob = 0.0;
  double value = 0.0;
  BetaShape shape;
};

class ActorCritic {
 public:
  static constexpr std::size_t kOutputs = 3;

  ActorCritic() = default;
  explicit ActorCritic(DenseNetwork net);
  static ActorCritic create(std::size_t observation_size, const std::vector<std::size_t>& hidden,
                            RngStream& rng);

  const DenseNetwork& network() const { return net_; }
  DenseNetwork& network() { return net_; }

  static PolicyOutput decode(std::span<const double> outputs);
  PolicyOutput evaluate(std::span<const double> observation) const;
  ActionSample act(std::span<const double> observation, RngStream& rng) const;
  double mean_action(std::span<const double> observation) const;

  friend bool operator==(const ActorCritic&, const ActorCritic&) = default;

 private:
  DenseNetwork net_;
};

// Everything needed to rebuild a policy and the observation it expects.
struct Checkpoint {
  ActorCritic policy;
  AdamState optimizer;
  EnvConfig env;
  std::size_t update_index = 0;
};

inline constexpr const char* kCheckpointMagic = "mevbid-checkpoint";
inline constexpr int kCheckpointVersion = 1;

// Text format; save -> load -> save reproduces the bytes exactly.
void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
// Throws InvalidInput on a bad magic line, an unsupported version or
// truncated content.
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Empty when the observation-relevant settings agree; otherwise a list of the
// differing fields.
std::string describe_env_mismatch(const EnvConfig& a, const EnvConfig& b);

}  // namespace mevbid
