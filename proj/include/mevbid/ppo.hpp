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

// Proximal policy optimization with a clipped surrogate, GAE, entropy bonus
// and shuffled minibatch Adam updates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mevbid/actor_critic.hpp"
#include "mevbid/adam.hpp"
#include "mevbid/env.hpp"
#include "mevbid/rng.hpp"

namespace mevbid {

struct PPOConfig {
  double clip_ratio = 0.2;
  double gae_lambda = 0.95;
  double gamma = 0.0;  // auctions are one-step bandits
  std::size_t epochs_per_update = 4;
  std::size_t minibatch_size = 256;
  std::size_t rollout_length = 2048;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double learning_rate = 3e-4;
  double max_grad_norm = 0.5;  // <= 0 disables clipping
  std::size_t max_updates = 200;
  std::vector<std::size_t> hidden_sizes{64, 64};
  std::size_t workers = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Trajectory {
  std::vector<Observation> observations;
  std::vector<double> actions;
  std::vector<double> log_probs;
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<bool> dones;
  std::vector<StepInfo> infos;
  double bootstrap_value = 0.0;  // V(s) after the last step, 0 when it ended the stream

  std::size_t size() const { return actions.size(); }
  void append(const Trajectory& other);  // takes over other's bootstrap
};

// Steps the environment `length` times or until the stream ends. Throws
// StateError when the environment is already exhausted.
Trajectory collect_rollout(const ActorCritic& policy, BiddingEnv& env, std::size_t length, RngStream& rng);

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

// delta_t = r_t + gamma V_{t+1} (1 - done_t) - V_t, A_t = delta_t + gamma
// lambda (1 - done_t) A_{t+1}; V_T is the bootstrap value.
GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      const std::vector<bool>& dones, double gamma, double lambda, double bootstrap_value);

struct RolloutBatch {
  Trajectory trajectory;
  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return trajectory.size(); }
};

// GAE per segment, then concatenation in segment order.
RolloutBatch make_batch(const std::vector<Trajectory>& segments, double gamma, double lambda);

// Mean 0, population std 1; all zeros when the std is below 1e-8.
std::vector<double> normalize_advantages(std::span<const double> advantages);

struct LossBreakdown {
  double total = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
};

// Mean over the minibatch of
//   -min(rho A, clip(rho, 1 - c, 1 + c) A) + value_coef (V - R)^2 - entropy_coef H.
// Adds the parameter gradient into grad when it is non-empty.
LossBreakdown minibatch_loss(const ActorCritic& policy, const RolloutBatch& batch,
                             std::span<const double> normalized_advantages,
                             std::span<const std::size_t> indices, const PPOConfig& config,
                             std::span<double> grad);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double first_minibatch_clip_fraction = 0.0;
  std::size_t minibatches = 0;
};

// Throws NumericalError (with the offending minibatch in the message) on a
// non-finite loss or gradient.
UpdateStats ppo_update(ActorCritic& policy, AdamState& optimizer, const RolloutBatch& batch,
                       const PPOConfig& config, RngStream& rng);

}  // namespace mevbid
