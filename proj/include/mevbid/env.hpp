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

// One-auction-per-step bidding environments over a replayed scenario stream
// or a live opponent simulator.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "mevbid/auction.hpp"
#include "mevbid/dataset.hpp"
#include "mevbid/features.hpp"
#include "mevbid/market_sim.hpp"
#include "mevbid/rng.hpp"

namespace mevbid {

enum class EnvMode { stateless, history_conditioned };

std::string to_string(EnvMode mode);
EnvMode env_mode_from_string(const std::string& text);

struct EnvConfig {
  EnvMode mode = EnvMode::stateless;
  std::size_t history_window = 10;   // H
  std::size_t history_samples = 5;   // K
  std::size_t stats_window = 50;     // W
  InformationRegime regime;
  RewardParams reward;
  std::vector<std::string> protocol_vocabulary;
  double max_route_length = 6.0;

  EnvConfig();
  void validate() const;
  ObservationLayout layout() const;
  std::size_t observation_size() const { return layout().total_size(); }
};

// Competition the agent faces in one auction. Independent of the agent's
// bid, so it can be drawn before the agent acts.
struct AuctionDraw {
  double threshold = 0.0;
  std::size_t competitor_count = 0;
  const ScenarioRecord* record = nullptr;  // replay only
};

class AuctionSource {
 public:
  virtual ~AuctionSource() = default;
  virtual std::size_t size() const = 0;
  virtual const Opportunity& opportunity(std::size_t index) const = 0;
  virtual void reset(std::uint64_t seed) = 0;
  // Called once per auction, in index order.
  virtual AuctionDraw draw(std::size_t index) = 0;
  virtual std::unique_ptr<AuctionSource> clone() const = 0;
};

class ReplaySource : public AuctionSource {
 public:
  explicit ReplaySource(std::shared_ptr<const ScenarioStream> stream);

  std::size_t size() const override { return stream_->size(); }
  const Opportunity& opportunity(std::size_t index) const override;
  void reset(std::uint64_t) override {}
  AuctionDraw draw(std::size_t index) override;
  std::unique_ptr<AuctionSource> clone() const override;

 private:
  std::shared_ptr<const ScenarioStream> stream_;
};

class SimulatedSource : public AuctionSource {
 public:
  SimulatedSource(std::shared_ptr<const std::vector<Opportunity>> opportunities,
                  std::vector<SearcherProfile> profiles, double window_ms, std::uint64_t stream_id);

  std::size_t size() const override { return opportunities_->size(); }
  const Opportunity& opportunity(std::size_t index) const override;
  void reset(std::uint64_t seed) override;
  AuctionDraw draw(std::size_t index) override;
  std::unique_ptr<AuctionSource> clone() const override;

 private:
  std::shared_ptr<const std::vector<Opportunity>> opportunities_;
  std::vector<SearcherProfile> profiles_;
  double window_ms_;
  std::uint64_t stream_id_;
  RngStream rng_;
};

struct StepInfo {
  bool won = false;
  double profit = 0.0;
  double threshold = 0.0;
  double mev = 0.0;
  double action = 0.0;
  double counterfactual = 0.0;
};

struct StepResult {
  double reward = 0.0;
  Observation observation;
  bool done = false;
  StepInfo info;
};

class BiddingEnv {
 public:
  BiddingEnv(EnvConfig config, std::unique_ptr<AuctionSource> source);
  BiddingEnv(const BiddingEnv& other);
  BiddingEnv& operator=(const BiddingEnv& other);
  BiddingEnv(BiddingEnv&&) noexcept = default;
  BiddingEnv& operator=(BiddingEnv&&) noexcept = default;

  const EnvConfig& config() const { return config_; }
  std::size_t size() const { return source_->size(); }
  std::size_t index() const { return t_; }
  bool done() const { return t_ >= source_->size(); }

  // Throws InvalidInput on an empty stream.
  const Observation& reset(std::uint64_t seed);
  const Observation& observation() const { return observation_; }
  // Competition for the current auction; exposed for oracle baselines and
  // diagnostics, never part of the observation.
  const AuctionDraw& current_draw() const { return draw_; }

  // Actions outside [0,1] are clipped with a warning. Throws StateError once
  // done.
  StepResult step(double action);

 private:
  struct PastAuction {
    std::vector<double> route_summary;  // first three route scalars
    bool had_winner = false;
    double winning_fraction = 0.0;
    std::size_t competitor_count = 0;
    bool agent_won = false;
    double agent_bid = 0.0;
  };

  void build_observation();
  void load_draw();

  EnvConfig config_;
  std::unique_ptr<AuctionSource> source_;
  RngStream history_rng_;
  std::size_t t_ = 0;
  bool started_ = false;
  AuctionDraw draw_;
  Observation observation_;
  std::vector<PastAuction> past_;
  std::deque<bool> own_wins_;
};

BiddingEnv make_replay_env(const EnvConfig& config, std::shared_ptr<const ScenarioStream> stream);
BiddingEnv make_simulated_env(const EnvConfig& config,
                              std::shared_ptr<const std::vector<Opportunity>> opportunities,
                              std::vector<SearcherProfile> profiles, double window_ms,
                              std::uint64_t stream_id);

}  // namespace mevbid
