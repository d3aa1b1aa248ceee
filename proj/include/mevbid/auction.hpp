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

// Sealed-bid first-price auction resolution, the shaped bidding reward and
// the win-ratio / max-profit-capture metrics. Fractions are shares of the
// opportunity's MEV value; money is MATIC as double.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mevbid {

using SearcherId = std::string;

struct Opportunity {
  std::string id;
  std::uint64_t block_height = 0;
  double mev_value = 0.0;
  std::vector<std::string> route;  // protocol per hop, in order
  double route_frequency = 0.0;    // occurrences per 1000 training opportunities
};

struct BidSubmission {
  SearcherId searcher_id;
  double fraction = 0.0;
  double latency_ms = 0.0;
};

struct AuctionOutcome {
  std::optional<SearcherId> winner;
  double winning_fraction = 0.0;  // 0 when there is no winner
  // Highest competing on-time fraction for every on-time bidder.
  std::map<SearcherId, double> threshold_per_bidder;
  std::vector<SearcherId> on_time_bidders;  // sorted by id
  std::size_t num_late = 0;

  double threshold_for(const SearcherId& id) const;
};

struct RewardParams {
  double epsilon = 1e-9;
  double lambda_loss = 0.05;
  double alpha_overbid = 0.1;

  void validate() const;
};

// Per-auction record of how a bidder fared, plus the perfect-information
// profit it could have had.
struct EvalTally {
  std::vector<bool> wins;
  std::vector<double> profits;
  std::vector<double> counterfactual_max;

  std::size_t size() const { return wins.size(); }
  void add(bool won, double profit, double counterfactual);
  void validate() const;
};

struct ProfitCapture {
  double sum_profit = 0.0;
  double upper_bound = 0.0;
  double mpc = 0.0;
};

inline constexpr double kDefaultWindowMs = 250.0;

// Bids with latency above the window are censored. The winner is the unique
// highest on-time fraction; an exact tie at the top leaves no winner.
// Throws InvalidInput on duplicate searcher ids, fractions outside [0,1],
// negative latency or a non-positive window.
AuctionOutcome resolve_auction(std::span<const BidSubmission> bids, double window_ms);

inline bool wins_against(double fraction, double threshold) { return fraction > threshold; }

// pi = w (1 - b) v
double realized_profit(double fraction, double mev, bool won);

// pi / (v + eps) - lambda 1{lost} - alpha (b - threshold)+
double shaped_reward(double fraction, double mev, double threshold, bool won,
                     const RewardParams& params);

// max(0, (1 - (threshold + eps)) v): profit from bidding just above the
// threshold.
double counterfactual_max_profit(double threshold, double mev, double epsilon);

double win_ratio(const EvalTally& tally);

// Throws UndefinedMetric when the upper bound is zero.
double profit_capture_ratio(double sum_profit, double upper_bound);
ProfitCapture max_profit_capture(const EvalTally& tally);

}  // namespace mevbid
