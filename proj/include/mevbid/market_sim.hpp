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

// Stochastic opponents for the auction simulator: route-complexity dependent
// arrival, exponential latency censored by the relay window, and a per
// searcher bid-fraction law. Also the disclosure rule that governs which past
// outcomes a bidder gets to see.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mevbid/auction.hpp"
#include "mevbid/rng.hpp"

namespace mevbid {

// Bid-fraction law of one opponent: Beta(alpha, beta) or a point mass.
struct BidFractionDist {
  enum class Kind { beta, fixed };
  Kind kind = Kind::beta;
  double alpha = 2.0;
  double beta = 5.0;
  double value = 0.0;  // Kind::fixed only

  static BidFractionDist beta_law(double alpha, double beta);
  static BidFractionDist fixed(double value);
  // Beta law with the given mean and variance (method of moments).
  static BidFractionDist from_moments(double mean, double variance);

  void validate() const;
  double sample(RngStream& rng) const;
  double mean() const;
};

struct SearcherProfile {
  SearcherId searcher_id;
  // Keyed by route-complexity bucket 1, 2, 3 (3 = three or more protocols).
  std::map<int, double> arrival_prob_by_complexity;
  double latency_mean_ms = 100.0;
  BidFractionDist bid_fraction;

  void validate() const;
};

struct InformationRegime {
  enum class Mode { real_time, delayed };
  Mode mode = Mode::real_time;
  std::size_t delay_auctions = 0;

  static InformationRegime real_time() { return {}; }
  static InformationRegime delayed(std::size_t auctions) { return {Mode::delayed, auctions}; }
  void validate() const;
};

inline const SearcherId kAgentId = "agent";

// min(distinct protocols on the route, 3).
int route_complexity(const Opportunity& opportunity);

bool sample_arrival(const SearcherProfile& profile, const Opportunity& opportunity, RngStream& rng);
double sample_latency(const SearcherProfile& profile, RngStream& rng);

struct SimulatedAuction {
  AuctionOutcome outcome;
  double agent_threshold = 0.0;
  std::vector<BidSubmission> bids;  // opponents in profile order, agent last
};

// Draws each profile in declared order (arrival, then latency and fraction
// when it arrives), adds the agent at latency 0 and resolves the auction.
SimulatedAuction simulate_auction(const Opportunity& opportunity, double agent_fraction,
                                  std::span<const SearcherProfile> profiles, double window_ms,
                                  RngStream& rng);

// Opponent bids only; what simulate_auction would draw before the agent bids.
std::vector<BidSubmission> sample_opponent_bids(const Opportunity& opportunity,
                                                std::span<const SearcherProfile> profiles,
                                                RngStream& rng);

struct Disclosure {
  std::size_t index = 0;
  bool had_winner = false;
  double winning_fraction = 0.0;
};

// Outcomes visible at now_index: index < now_index in real time, index <=
// now_index - delay when delayed.
std::vector<Disclosure> disclose(std::span<const AuctionOutcome> history,
                                 const InformationRegime& regime, std::size_t now_index);

// Largest outcome index visible at now_index; false when nothing is visible yet.
bool latest_visible_index(const InformationRegime& regime, std::size_t now_index, std::size_t& index);

}  // namespace mevbid
