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

#include "mevbid/dataset.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "mevbid/errors.hpp"

namespace mevbid {

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidInput("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

PreprocessResult preprocess(std::vector<AuctionRecord> records, const PreprocessOptions& options) {
  if (!(options.small_mev_quantile >= 0.0 && options.small_mev_quantile < 1.0)) {
    throw ConfigError("small_mev_quantile must lie in [0,1)");
  }
  PreprocessResult result;
  result.stats.input = records.size();

  std::vector<AuctionRecord> kept;
  kept.reserve(records.size());
  for (auto& r : records) {
    if (r.mev_value < 0.0 || std::isnan(r.mev_value)) {
      ++result.stats.dropped_negative;
    } else {
      kept.push_back(std::move(r));
    }
  }

  if (options.min_mev_value) {
    result.stats.mev_threshold = *options.min_mev_value;
  } else if (!kept.empty()) {
    std::vector<double> values;
    values.reserve(kept.size());
    for (const auto& r : kept) values.push_back(r.mev_value);
    result.stats.mev_threshold = empirical_quantile(std::move(values), options.small_mev_quantile);
  }

  for (auto& r : kept) {
    if (r.mev_value < result.stats.mev_threshold) {
      ++result.stats.dropped_small;
    } else if (options.require_winner && !r.winner_id) {
      ++result.stats.dropped_winnerless;
    } else {
      result.records.push_back(std::move(r));
    }
  }
  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const AuctionRecord& a, const AuctionRecord& b) { return a.block_height < b.block_height; });
  return result;
}

std::vector<AuctionRecord> preprocess(std::vector<AuctionRecord> records, double small_mev_quantile,
                                      bool require_winner) {
  PreprocessOptions options;
  options.small_mev_quantile = small_mev_quantile;
  options.require_winner = require_winner;
  return preprocess(std::move(records), options).records;
}

std::pair<std::vector<AuctionRecord>, std::vector<AuctionRecord>> chronological_split(
    const std::vector<AuctionRecord>& records, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split ratio must lie in (0,1)");
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].block_height < records[i - 1].block_height) {
      throw InvalidInput("chronological_split needs records sorted by block height");
    }
  }
  const double n = static_cast<double>(records.size());
  auto cut = static_cast<std::size_t>(std::ceil(ratio * n - 1e-9));
  cut = std::min(cut, records.size());
  while (cut > 0 && cut < records.size() && records[cut].block_height == records[cut - 1].block_height) {
    --cut;
  }
  std::vector<AuctionRecord> train(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<AuctionRecord> test(records.begin() + static_cast<std::ptrdiff_t>(cut), records.end());
  return {std::move(train), std::move(test)};
}

SearcherId identify_leader(const std::vector<AuctionRecord>& records) {
  std::map<SearcherId, double> profit;  // ordered: first max is the smallest id
  for (const auto& r : records) {
    if (const auto* bid = r.winning_bid()) {
      profit[bid->searcher_id] += (1.0 - bid->fraction) * r.mev_value;
    }
  }
  if (profit.empty()) throw InvalidInput("no winning bids: cannot identify a market leader");
  auto best = profit.begin();
  for (auto it = profit.begin(); it != profit.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

RouteFrequency::RouteFrequency(const std::vector<AuctionRecord>& window) {
  for (const auto& r : window) ++counts_[join_route(r.route)];
  total_ = window.size();
}

double RouteFrequency::per_thousand(const std::vector<std::string>& route) const {
  if (total_ == 0) return 0.0;
  auto it = counts_.find(join_route(route));
  if (it == counts_.end()) return 0.0;
  return 1000.0 * static_cast<double>(it->second) / static_cast<double>(total_);
}

Opportunity to_opportunity(const AuctionRecord& record, const RouteFrequency& frequency) {
  Opportunity opp;
  opp.id = record.opp_id;
  opp.block_height = record.block_height;
  opp.mev_value = record.mev_value;
  opp.route = record.route;
  opp.route_frequency = frequency.per_thousand(record.route);
  return opp;
}

std::string to_string(ScenarioKind kind) {
  return kind == ScenarioKind::historical_participation ? "historical_participation" : "leader_replacement";
}

ScenarioKind scenario_kind_from_string(const std::string& text) {
  if (text == "historical_participation") return ScenarioKind::historical_participation;
  if (text == "leader_replacement") return ScenarioKind::leader_replacement;
  throw ConfigError("unknown scenario '" + text + "'");
}

namespace {

ScenarioRecord make_record(const AuctionRecord& r, const RouteFrequency& frequency, double window_ms,
                           const SearcherId* removed) {
  ScenarioRecord out;
  out.opportunity = to_opportunity(r, frequency);
  for (const auto& bid : r.bids) {
    if (removed && bid.searcher_id == *removed) {
      out.removed_bids.push_back(bid);
      continue;
    }
    if (bid.latency_ms > window_ms) continue;
    out.threshold = std::max(out.threshold, bid.fraction);
    ++out.competitor_count;
  }
  return out;
}

}  // namespace

ScenarioStream build_historical_participation(const std::vector<AuctionRecord>& test_records,
                                              const RouteFrequency& frequency, double window_ms) {
  ScenarioStream stream;
  stream.kind = ScenarioKind::historical_participation;
  stream.records.reserve(test_records.size());
  for (const auto& r : test_records) stream.records.push_back(make_record(r, frequency, window_ms, nullptr));
  return stream;
}

ScenarioStream build_leader_replacement(const std::vector<AuctionRecord>& test_records,
                                        const SearcherId& leader_id, const RouteFrequency& frequency,
                                        double window_ms) {
  if (leader_id.empty()) throw InvalidInput("leader id must not be empty");
  ScenarioStream stream;
  stream.kind = ScenarioKind::leader_replacement;
  stream.leader_id = leader_id;
  for (const auto& r : test_records) {
    const bool leader_bid = std::any_of(r.bids.begin(), r.bids.end(),
                                        [&](const HistoricalBid& b) { return b.searcher_id == leader_id; });
    if (leader_bid) stream.records.push_back(make_record(r, frequency, window_ms, &leader_id));
  }
  if (stream.records.empty()) {
    stream.warnings.push_back("leader " + leader_id + " never bid in the given records");
    spdlog::warn("leader {} never bid in the given records; leader-replacement stream is empty", leader_id);
  }
  return stream;
}

std::optional<double> removed_bid_fraction(const ScenarioRecord& record) {
  if (record.removed_bids.empty()) return std::nullopt;
  double best = 0.0;
  for (const auto& bid : record.removed_bids) best = std::max(best, bid.fraction);
  return best;
}

}  // namespace mevbid
