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

#include "mevbid/market_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mevbid/errors.hpp"

namespace mevbid {

BidFractionDist BidFractionDist::beta_law(double alpha, double beta) {
  BidFractionDist d;
  d.kind = Kind::beta;
  d.alpha = alpha;
  d.beta = beta;
  d.validate();
  return d;
}

BidFractionDist BidFractionDist::fixed(double value) {
  BidFractionDist d;
  d.kind = Kind::fixed;
  d.value = value;
  d.validate();
  return d;
}

BidFractionDist BidFractionDist::from_moments(double mean, double variance) {
  if (!(mean > 0.0 && mean < 1.0)) throw ConfigError("moment fit needs mean in (0,1)");
  if (!(variance > 0.0 && variance < mean * (1.0 - mean))) {
    throw ConfigError("moment fit needs 0 < variance < mean (1 - mean)");
  }
  const double common = mean * (1.0 - mean) / variance - 1.0;
  return beta_law(mean * common, (1.0 - mean) * common);
}

void BidFractionDist::validate() const {
  if (kind == Kind::beta) {
    if (!(alpha > 0.0 && beta > 0.0)) throw ConfigError("beta bid law needs positive parameters");
  } else if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError("fixed bid fraction must lie in [0,1]");
  }
}

double BidFractionDist::sample(RngStream& rng) const {
  return kind == Kind::fixed ? value : rng.beta(alpha, beta);
}

double BidFractionDist::mean() const {
  return kind == Kind::fixed ? value : alpha / (alpha + beta);
}

void SearcherProfile::validate() const {
  if (searcher_id.empty()) throw ConfigError("searcher profile without id");
  if (searcher_id == kAgentId) throw ConfigError("searcher id 'agent' is reserved");
  for (const auto& [bucket, p] : arrival_prob_by_complexity) {
    if (bucket < 1 || bucket > 3) throw ConfigError("complexity bucket must be 1, 2 or 3");
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("arrival probability outside [0,1] for " + searcher_id);
    }
  }
  if (!(latency_mean_ms > 0.0)) throw ConfigError("latency mean must be positive for " + searcher_id);
  bid_fraction.validate();
}

void InformationRegime::validate() const {
  if ((mode == Mode::real_time) != (delay_auctions == 0)) {
    throw ConfigError("delay must be 0 exactly when disclosure is real-time");
  }
}

int route_complexity(const Opportunity& opportunity) {
  if (opportunity.route.empty()) throw InvalidInput("opportunity " + opportunity.id + " has an empty route");
  std::set<std::string> distinct(opportunity.route.begin(), opportunity.route.end());
  return static_cast<int>(std::min<std::size_t>(distinct.size(), 3));
}

bool sample_arrival(const SearcherProfile& profile, const Opportunity& opportunity, RngStream& rng) {
  const int bucket = route_complexity(opportunity);
  auto it = profile.arrival_prob_by_complexity.find(bucket);
  if (it == profile.arrival_prob_by_complexity.end()) {
    throw ConfigError("profile " + profile.searcher_id + " has no arrival probability for complexity " +
                      std::to_string(bucket));
  }
  return rng.bernoulli(it->second);
}

double sample_latency(const SearcherProfile& profile, RngStream& rng) {
  return rng.exponential(profile.latency_mean_ms);
}

std::vector<BidSubmission> sample_opponent_bids(const Opportunity& opportunity,
                                                std::span<const SearcherProfile> profiles,
                                                RngStream& rng) {
  std::vector<BidSubmission> bids;
  for (const auto& profile : profiles) {
    if (!sample_arrival(profile, opportunity, rng)) continue;
    BidSubmission bid;
    bid.searcher_id = profile.searcher_id;
    bid.latency_ms = sample_latency(profile, rng);
    bid.fraction = profile.bid_fraction.sample(rng);
    bids.push_back(std::move(bid));
  }
  return bids;
}

SimulatedAuction simulate_auction(const Opportunity& opportunity, double agent_fraction,
                                  std::span<const SearcherProfile> profiles, double window_ms,
                                  RngStream& rng) {
  if (!(agent_fraction >= 0.0 && agent_fraction <= 1.0)) {
    throw InvalidInput("agent fraction outside [0,1]");
  }
  SimulatedAuction sim;
  sim.bids = sample_opponent_bids(opportunity, profiles, rng);
  sim.bids.push_back({kAgentId, agent_fraction, 0.0});
  sim.outcome = resolve_auction(sim.bids, window_ms);
  sim.agent_threshold = sim.outcome.threshold_for(kAgentId);
  return sim;
}

bool latest_visible_index(const InformationRegime& regime, std::size_t now_index, std::size_t& index) {
  const std::size_t lag = regime.mode == InformationRegime::Mode::real_time ? 1 : regime.delay_auctions;
  if (now_index < lag) return false;
  index = now_index - lag;
  return true;
}

std::vector<Disclosure> disclose(std::span<const AuctionOutcome> history,
                                 const InformationRegime& regime, std::size_t now_index) {
  std::vector<Disclosure> visible;
  std::size_t last = 0;
  if (!latest_visible_index(regime, now_index, last)) return visible;
  const std::size_t end = std::min(history.size(), last + 1);
  visible.reserve(end);
  for (std::size_t i = 0; i < end; ++i) {
    visible.push_back({i, history[i].winner.has_value(), history[i].winning_fraction});
  }
  return visible;
}

}  // namespace mevbid
