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

// PPO training loop and counterfactual evaluation of bidding policies on
// scenario streams.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mevbid/actor_critic.hpp"
#include "mevbid/auction.hpp"
#include "mevbid/dataset.hpp"
#include "mevbid/env.hpp"
#include "mevbid/ppo.hpp"

namespace mevbid {

// What a bidder may look at. threshold and record are there for oracle and
// historical baselines; learned policies only read the observation.
struct DecisionContext {
  std::span<const double> observation;
  double threshold = 0.0;
  const ScenarioRecord* record = nullptr;
  std::size_t index = 0;
};

using BidFunction = std::function<double(const DecisionContext&)>;

// Beta mean.
BidFunction deterministic_bidder(std::shared_ptr<const ActorCritic> policy);
BidFunction stochastic_bidder(std::shared_ptr<const ActorCritic> policy, std::uint64_t seed);
// threshold + epsilon, capped at 1.
BidFunction oracle_bidder(double epsilon);
BidFunction constant_bidder(double fraction);
// The removed incumbent's own historical bid; 0 when it did not bid.
BidFunction incumbent_bidder();

struct ReportRow {
  std::string setting;
  std::string environment;
  double win_ratio = 0.0;
  double mpc = 0.0;  // NaN when the upper bound is 0
  double sum_profit = 0.0;
  double upper_bound = 0.0;
};

struct EvalResult {
  EvalTally tally;
  std::vector<double> thresholds;
  std::vector<double> mev_values;
  ReportRow row;
};

// Replays the stream through an environment built from env_config. Throws
// InvalidInput on an empty stream.
EvalResult evaluate(const BidFunction& bidder, const ScenarioStream& stream, const EnvConfig& env_config,
                    std::uint64_t seed = 0);

struct CurveRow {
  std::size_t update_index = 0;
  double mean_reward = 0.0;
  double win_ratio = 0.0;
  double mpc = 0.0;  // on the rollout; NaN when its upper bound is 0
  UpdateStats stats;
  std::optional<double> validation_mpc;
};

// Builds the environment for rollout worker `worker`; each worker gets its
// own instance.
using EnvFactory = std::function<BiddingEnv(std::size_t worker)>;

struct TrainOptions {
  PPOConfig ppo;
  // Scored with the deterministic policy after every update; the best one
  // is kept.
  std::shared_ptr<const ScenarioStream> validation;
  std::function<void(const CurveRow&)> on_update;
};

struct TrainResult {
  Checkpoint best;
  Checkpoint last;
  std::vector<CurveRow> curve;
};

TrainResult train(const TrainOptions& options, const EnvFactory& make_env);

std::string format_curve_header();
std::string format_curve_row(const CurveRow& row);

}  // namespace mevbid
