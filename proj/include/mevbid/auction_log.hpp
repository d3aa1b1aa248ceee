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

// Auction log reader/writer.
//
// Comma-separated, one line per bid, header
//   block_height,opp_id,mev_value,route,searcher_id,fraction,latency_ms,is_winner
// Consecutive lines with the same opp_id form one auction. The route is the
// protocol names joined by '|'. An auction without bids is a single line with
// empty searcher_id, fraction, latency_ms and is_winner. An empty latency_ms
// means 0. A JSON-lines file with one object per line and the same keys is
// accepted as well.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mevbid/auction.hpp"

namespace mevbid {

struct HistoricalBid {
  SearcherId searcher_id;
  double fraction = 0.0;
  double latency_ms = 0.0;

  friend bool operator==(const HistoricalBid&, const HistoricalBid&) = default;
};

struct AuctionRecord {
  std::uint64_t block_height = 0;
  std::string opp_id;
  double mev_value = 0.0;
  std::vector<std::string> route;
  std::vector<HistoricalBid> bids;
  std::optional<SearcherId> winner_id;

  const HistoricalBid* winning_bid() const;
  friend bool operator==(const AuctionRecord&, const AuctionRecord&) = default;
};

inline constexpr const char* kAuctionLogHeader =
    "block_height,opp_id,mev_value,route,searcher_id,fraction,latency_ms,is_winner";

struct LogParseError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct ParsedLog {
  std::vector<AuctionRecord> records;
  std::vector<LogParseError> errors;

  bool ok() const { return errors.empty(); }
  std::string error_report() const;
};

// Throws InvalidInput for an unreadable file or a header mismatch. Bad data
// lines are reported in ParsedLog::errors; records touched by a bad line are
// left out.
ParsedLog parse_auction_log(const std::filesystem::path& path);
ParsedLog parse_auction_log(std::istream& in);

void write_auction_log(std::ostream& out, const std::vector<AuctionRecord>& records);
void write_auction_log(const std::filesystem::path& path, const std::vector<AuctionRecord>& records);

std::string join_route(const std::vector<std::string>& route);
std::vector<std::string> split_route(const std::string& text);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace mevbid
