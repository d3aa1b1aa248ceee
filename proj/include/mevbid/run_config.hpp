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

// Run configuration: an INI file with typed keys. Every key has a default
// except input paths; unknown sections or keys are rejected.
//
//   [run]     seed, out_dir, workers, stochastic_eval, eval_seeds
//   [data]    log, train, test, checkpoint
//   [ingest]  small_mev_quantile, min_mev_value, require_winner, train_ratio
//   [market]  window_ms
//   [synth]   count, start_block, opportunities_per_block, mev_log_mean,
//             mev_log_sigma, max_route_length, protocols
//   [profile.<id>]  arrival_1, arrival_2, arrival_3, latency_mean_ms and one
//             of: bid_alpha + bid_beta | bid_fixed | bid_mean + bid_variance
//   [env]     mode, history_window, history_samples, stats_window,
//             disclosure, disclosure_delay, vocabulary, max_route_length
//   [reward]  epsilon, lambda_loss, alpha_overbid
//   [ppo]     clip_ratio, gae_lambda, gamma, epochs_per_update,
//             minibatch_size, rollout_length, entropy_coef, value_coef,
//             learning_rate, max_grad_norm, max_updates, hidden
//   [train]   source, scenario, validation_fraction, sim_opportunities,
//             sim_validation_opportunities
//   [eval]    scenarios, leader

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mevbid/dataset.hpp"
#include "mevbid/env.hpp"
#include "mevbid/market_sim.hpp"
#include "mevbid/ppo.hpp"
#include "mevbid/synthetic.hpp"

namespace mevbid {

enum class TrainSource { replay, simulated };

struct RunConfig {
  std::uint64_t seed = 7;
  std::string out_dir = "out";
  std::size_t workers = 1;
  bool stochastic_eval = false;
  std::size_t eval_seeds = 5;

  std::string log_path;
  std::string train_path;
  std::string test_path;
  std::string checkpoint_path;

  PreprocessOptions preprocess;
  double train_ratio = 0.5;
  double window_ms = kDefaultWindowMs;

  OpportunitySpec synth;
  std::vector<SearcherProfile> profiles;

  EnvConfig env;
  PPOConfig ppo;

  TrainSource train_source = TrainSource::replay;
  ScenarioKind train_scenario = ScenarioKind::historical_participation;
  double validation_fraction = 0.1;
  std::size_t sim_opportunities = 4096;
  std::size_t sim_validation_opportunities = 500;

  std::vector<ScenarioKind> eval_scenarios{ScenarioKind::historical_participation,
                                           ScenarioKind::leader_replacement};
  std::optional<SearcherId> leader_id;

  void validate() const;
};

// Throws ConfigError with the offending section/key.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

// Canonical INI text with every key; parses back to an equal configuration.
std::string dump_run_config(const RunConfig& config);

}  // namespace mevbid
