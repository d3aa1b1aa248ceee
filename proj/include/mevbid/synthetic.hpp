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

// Desk-scale synthetic opportunity streams and auction logs.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mevbid/auction.hpp"
#include "mevbid/auction_log.hpp"
#include "mevbid/dataset.hpp"
#include "mevbid/market_sim.hpp"
#include "mevbid/rng.hpp"

namespace mevbid {

std::vector<std::string> default_protocol_vocabulary();

struct OpportunitySpec {
  std::size_t count = 1000;
  std::uint64_t start_block = 1;
  std::size_t opportunities_per_block = 2;  // mean; blocks advance by Bernoulli steps
  double mev_log_mean = 0.0;                // MEV ~ LogNormal(mean, sigma), MATIC
  double mev_log_sigma = 1.0;
  std::size_t max_route_length = 4;
  std::vector<std::string> protocols = default_protocol_vocabulary();

  void validate() const;
};

struct SyntheticLogSpec {
  OpportunitySpec opportunities;
  std::vector<SearcherProfile> profiles;
  double window_ms = kDefaultWindowMs;

  void validate() const;
};

std::vector<Opportunity> generate_opportunities(const OpportunitySpec& spec, RngStream& rng);

// Only on-time bids are logged, as a relay would record them. The winner is
// resolved by the first-price rule; ties leave the auction winnerless.
std::vector<AuctionRecord> generate_synthetic_log(const SyntheticLogSpec& spec, RngStream& rng);

// Replayable stream whose thresholds come from freshly sampled opponents.
ScenarioStream simulate_scenario(const std::vector<Opportunity>& opportunities,
                                 const std::vector<SearcherProfile>& profiles, double window_ms,
                                 RngStream& rng);

}  // namespace mevbid
