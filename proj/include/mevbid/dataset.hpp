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

// Log preprocessing, the chronological split and the two counterfactual
// evaluation scenarios built from test auctions.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mevbid/auction.hpp"
#include "mevbid/auction_log.hpp"

namespace mevbid {

struct PreprocessOptions {
  double small_mev_quantile = 0.10;
  // Absolute floor in MATIC. When set it replaces the quantile, which makes a
  // second pass over already filtered data a no-op.
  std::optional<double> min_mev_value;
  bool require_winner = true;
};

struct PreprocessStats {
  std::size_t input = 0;
  std::size_t dropped_negative = 0;
  std::size_t dropped_small = 0;
  std::size_t dropped_winnerless = 0;
  double mev_threshold = 0.0;  // records with mev_value below this were dropped
};

struct PreprocessResult {
  std::vector<AuctionRecord> records;
  PreprocessStats stats;
};

// Linear-interpolation empirical quantile (numpy's default) of a non-empty
// sample.
double empirical_quantile(std::vector<double> values, double q);

// Drops negative-MEV records, records below the small-MEV threshold and,
// optionally, winnerless records; sorts the rest by block height (stable).
PreprocessResult preprocess(std::vector<AuctionRecord> records, const PreprocessOptions& options);
std::vector<AuctionRecord> preprocess(std::vector<AuctionRecord> records, double small_mev_quantile,
                                      bool require_winner);

// First ceil(ratio N) records go to train, moved earlier so that no block is
// split across the boundary.
std::pair<std::vector<AuctionRecord>, std::vector<AuctionRecord>> chronological_split(
    const std::vector<AuctionRecord>& records, double ratio);

// Searcher with the largest realized profit sum((1 - b) v) over won
// auctions; ties go to the lexicographically smaller id.
SearcherId identify_leader(const std::vector<AuctionRecord>& records);

// Route-shape frequencies per 1000 opportunities of a reference window.
class RouteFrequency {
 public:
  RouteFrequency() = default;
  explicit RouteFrequency(const std::vector<AuctionRecord>& window);

  double per_thousand(const std::vector<std::string>& route) const;

 private:
  std::map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

Opportunity to_opportunity(const AuctionRecord& record, const RouteFrequency& frequency);

struct ScenarioRecord {
  Opportunity opportunity;
  double threshold = 0.0;          // highest remaining on-time fraction
  std::size_t competitor_count = 0;  // remaining on-time bids
  std::vector<HistoricalBid> removed_bids;
};

enum class ScenarioKind { historical_participation, leader_replacement };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& text);

struct ScenarioStream {
  ScenarioKind kind = ScenarioKind::historical_participation;
  std::vector<ScenarioRecord> records;
  std::optional<SearcherId> leader_id;
  std::vector<std::string> warnings;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

// Agent joins every auction as an extra bidder.
ScenarioStream build_historical_participation(const std::vector<AuctionRecord>& test_records,
                                              const RouteFrequency& frequency = {},
                                              double window_ms = kDefaultWindowMs);

// Agent takes the leader's place in the auctions the leader bid in.
ScenarioStream build_leader_replacement(const std::vector<AuctionRecord>& test_records,
                                        const SearcherId& leader_id,
                                        const RouteFrequency& frequency = {},
                                        double window_ms = kDefaultWindowMs);

// Highest fraction the removed bidder submitted (the incumbent's own bid in
// a leader-replacement record); nullopt when nothing was removed.
std::optional<double> removed_bid_fraction(const ScenarioRecord& record);

}  // namespace mevbid
