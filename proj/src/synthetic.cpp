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

#include "mevbid/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "mevbid/errors.hpp"

namespace mevbid {

std::vector<std::string> default_protocol_vocabulary() {
  return {"uniswap_v2", "uniswap_v3", "sushiswap", "quickswap", "balancer", "curve", "dodo", "kyberswap"};
}

void OpportunitySpec::validate() const {
  if (count == 0) throw ConfigError("synthetic count must be >= 1");
  if (opportunities_per_block == 0) throw ConfigError("opportunities_per_block must be >= 1");
  if (!(mev_log_sigma >= 0.0)) throw ConfigError("mev_log_sigma must be >= 0");
  if (max_route_length == 0) throw ConfigError("max_route_length must be >= 1");
  if (protocols.empty()) throw ConfigError("synthetic protocol list is empty");
}

void SyntheticLogSpec::validate() const {
  opportunities.validate();
  if (!(window_ms > 0.0)) throw ConfigError("window_ms must be positive");
  for (const auto& p : profiles) p.validate();
}

std::vector<Opportunity> generate_opportunities(const OpportunitySpec& spec, RngStream& rng) {
  spec.validate();
  std::vector<Opportunity> out;
  out.reserve(spec.count);
  std::uint64_t block = spec.start_block;
  const double advance_p = 1.0 / static_cast<double>(spec.opportunities_per_block);
  for (std::size_t i = 0; i < spec.count; ++i) {
    if (i > 0 && rng.bernoulli(advance_p)) ++block;
    Opportunity opp;
    char id[32];
    std::snprintf(id, sizeof(id), "opp%06zu", i);
    opp.id = id;
    opp.block_height = block;
    opp.mev_value = std::exp(spec.mev_log_mean + spec.mev_log_sigma * rng.normal());
    // Route length 2..max (1 when max is 1); hops drawn from a skewed
    // vocabulary so popular protocols dominate.
    const std::size_t length =
        spec.max_route_length == 1 ? 1 : 2 + rng.uniform_index(spec.max_route_length - 1);
    for (std::size_t h = 0; h < length; ++h) {
      const double u = rng.uniform();
      const auto idx = static_cast<std::size_t>(u * u * static_cast<double>(spec.protocols.size()));
      opp.route.push_back(spec.protocols[std::min(idx, spec.protocols.size() - 1)]);
    }
    out.push_back(std::move(opp));
  }
  // Route frequencies are measured over the generated window itself.
  std::map<std::vector<std::string>, std::size_t> counts;
  for (const auto& opp : out) ++counts[opp.route];
  for (auto& opp : out) {
    opp.route_frequency = 1000.0 * static_cast<double>(counts[opp.route]) / static_cast<double>(out.size());
  }
  return out;
}

std::vector<AuctionRecord> generate_synthetic_log(const SyntheticLogSpec& spec, RngStream& rng) {
  spec.validate();
  const auto opportunities = generate_opportunities(spec.opportunities, rng);
  std::vector<AuctionRecord> records;
  records.reserve(opportunities.size());
  for (const auto& opp : opportunities) {
    AuctionRecord r;
    r.block_height = opp.block_height;
    r.opp_id = opp.id;
    r.mev_value = opp.mev_value;
    r.route = opp.route;
    std::vector<BidSubmission> bids = sample_opponent_bids(opp, spec.profiles, rng);
    std::erase_if(bids, [&](const BidSubmission& b) { return b.latency_ms > spec.window_ms; });
    const AuctionOutcome outcome = resolve_auction(bids, spec.window_ms);
    for (const auto& b : bids) r.bids.push_back({b.searcher_id, b.fraction, b.latency_ms});
    r.winner_id = outcome.winner;
    records.push_back(std::move(r));
  }
  return records;
}

ScenarioStream simulate_scenario(const std::vector<Opportunity>& opportunities,
                                 const std::vector<SearcherProfile>& profiles, double window_ms,
                                 RngStream& rng) {
  ScenarioStream stream;
  stream.kind = ScenarioKind::historical_participation;
  stream.records.reserve(opportunities.size());
  for (const auto& opp : opportunities) {
    ScenarioRecord rec;
    rec.opportunity = opp;
    for (const auto& bid : sample_opponent_bids(opp, profiles, rng)) {
      if (bid.latency_ms > window_ms) continue;
      rec.threshold = std::max(rec.threshold, bid.fraction);
      ++rec.competitor_count;
    }
    stream.records.push_back(std::move(rec));
  }
  return stream;
}

}  // namespace mevbid
