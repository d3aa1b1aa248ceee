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

#include "mevbid/auction_log.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mevbid/errors.hpp"

namespace mevbid {
namespace {

struct Row {
  std::string block_height;
  std::string opp_id;
  std::string mev_value;
  std::string route;
  std::string searcher_id;
  std::string fraction;
  std::string latency_ms;
  std::string is_winner;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  for (;;) {
    auto pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& text, const char* field) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw InvalidInput(std::string("bad ") + field + " '" + text + "'");
  }
  return value;
}

Row row_from_csv(const std::string& line) {
  auto fields = split(line, ',');
  if (fields.size() != 8) {
    throw InvalidInput("expected 8 fields, found " + std::to_string(fields.size()));
  }
  return {fields[0], fields[1], fields[2], fields[3], fields[4], fields[5], fields[6], fields[7]};
}

std::string json_field(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw InvalidInput(std::string("missing key ") + key);
  const auto& v = obj.at(key);
  if (v.is_null()) return {};
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_unsigned() || v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::vector<std::string> hops;
    for (const auto& hop : v) hops.push_back(hop.get<std::string>());
    return join_route(hops);
  }
  throw InvalidInput(std::string("unsupported value for key ") + key);
}

Row row_from_json(const std::string& line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("bad JSON: ") + e.what());
  }
  if (!obj.is_object()) throw InvalidInput("JSON line is not an object");
  static const std::set<std::string> known = {"block_height", "opp_id", "mev_value", "route",
                                              "searcher_id", "fraction", "latency_ms", "is_winner"};
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) throw InvalidInput("unknown key " + item.key());
  }
  return {json_field(obj, "block_height"), json_field(obj, "opp_id"), json_field(obj, "mev_value"),
          json_field(obj, "route"),        json_field(obj, "searcher_id"), json_field(obj, "fraction"),
          json_field(obj, "latency_ms"),   json_field(obj, "is_winner")};
}

// Accumulates consecutive rows of one auction.
class RecordBuilder {
 public:
  explicit RecordBuilder(ParsedLog& out) : out_(out) {}

  void add(const Row& row) {
    if (row.opp_id.empty()) throw InvalidInput("empty opp_id");
    if (row.opp_id == poisoned_id_) return;  // rest of an auction already reported
    poisoned_id_.clear();
    if (!open_ || row.opp_id != current_.opp_id) {
      flush();
      if (finished_ids_.count(row.opp_id)) {
        throw InvalidInput("opp_id " + row.opp_id + " repeats after other auctions");
      }
      start(row);
    } else {
      check_same_auction(row);
    }
    add_bid(row);
  }

  // Drops the auction a bad line belongs to, including its remaining lines.
  void poison(const std::string& opp_id) {
    if (open_ && opp_id == current_.opp_id) {
      open_ = false;
      empty_line_ = false;
      current_ = AuctionRecord{};
    }
    finished_ids_.insert(opp_id);
    poisoned_id_ = opp_id;
  }

  void flush() {
    if (open_) {
      finished_ids_.insert(current_.opp_id);
      out_.records.push_back(std::move(current_));
    }
    open_ = false;
    empty_line_ = false;
    current_ = AuctionRecord{};
  }

 private:
  void start(const Row& row) {
    current_ = AuctionRecord{};
    current_.block_height = parse_number<std::uint64_t>(row.block_height, "block_height");
    current_.opp_id = row.opp_id;
    current_.mev_value = parse_number<double>(row.mev_value, "mev_value");
    current_.route = split_route(row.route);
    if (current_.route.empty()) throw InvalidInput("empty route");
    open_ = true;
  }

  void check_same_auction(const Row& row) const {
    if (parse_number<std::uint64_t>(row.block_height, "block_height") != current_.block_height ||
        parse_number<double>(row.mev_value, "mev_value") != current_.mev_value ||
        split_route(row.route) != current_.route) {
      throw InvalidInput("auction " + row.opp_id + " lines disagree on block, value or route");
    }
  }

  void add_bid(const Row& row) {
    const bool empty_bid = row.searcher_id.empty();
    if (empty_bid) {
      if (!row.fraction.empty() || !(row.is_winner.empty() || row.is_winner == "0")) {
        throw InvalidInput("bid fields without searcher_id");
      }
      if (!current_.bids.empty() || empty_line_) {
        throw InvalidInput("bidless line inside auction " + current_.opp_id + " that has bids");
      }
      empty_line_ = true;
      return;
    }
    if (empty_line_) throw InvalidInput("bid after bidless line in auction " + current_.opp_id);
    HistoricalBid bid;
    bid.searcher_id = row.searcher_id;
    bid.fraction = parse_number<double>(row.fraction, "fraction");
    if (!(bid.fraction >= 0.0 && bid.fraction <= 1.0)) {
      throw InvalidInput("fraction " + row.fraction + " outside [0,1]");
    }
    bid.latency_ms = row.latency_ms.empty() ? 0.0 : parse_number<double>(row.latency_ms, "latency_ms");
    if (!(bid.latency_ms >= 0.0)) throw InvalidInput("negative latency_ms");
    for (const auto& other : current_.bids) {
      if (other.searcher_id == bid.searcher_id) {
        throw InvalidInput("searcher " + bid.searcher_id + " bids twice in auction " + current_.opp_id);
      }
    }
    bool winner = false;
    if (row.is_winner == "1" || row.is_winner == "true") {
      winner = true;
    } else if (!(row.is_winner == "0" || row.is_winner == "false" || row.is_winner.empty())) {
      throw InvalidInput("is_winner must be 0 or 1, got '" + row.is_winner + "'");
    }
    if (winner) {
      if (current_.winner_id) throw InvalidInput("second winner in auction " + current_.opp_id);
      current_.winner_id = bid.searcher_id;
    }
    current_.bids.push_back(std::move(bid));
  }

  ParsedLog& out_;
  AuctionRecord current_;
  bool open_ = false;
  std::string poisoned_id_;
  bool empty_line_ = false;
  std::set<std::string> finished_ids_;
};

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

const HistoricalBid* AuctionRecord::winning_bid() const {
  if (!winner_id) return nullptr;
  for (const auto& bid : bids) {
    if (bid.searcher_id == *winner_id) return &bid;
  }
  return nullptr;
}

std::string ParsedLog::error_report() const {
  std::ostringstream os;
  for (const auto& e : errors) os << "line " << e.line << ": " << e.message << '\n';
  return os.str();
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string join_route(const std::vector<std::string>& route) {
  std::string out;
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (i) out += '|';
    out += route[i];
  }
  return out;
}

std::vector<std::string> split_route(const std::string& text) {
  if (text.empty()) return {};
  auto hops = split(text, '|');
  for (const auto& hop : hops) {
    if (hop.empty()) throw InvalidInput("empty protocol name in route '" + text + "'");
  }
  return hops;
}

ParsedLog parse_auction_log(std::istream& in) {
  ParsedLog log;
  std::string line;
  std::size_t line_no = 0;
  bool json = false;

  // First non-blank line decides the flavour.
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line.front() == '{') {
      json = true;
    } else if (line != kAuctionLogHeader) {
      throw InvalidInput("header mismatch at line " + std::to_string(line_no) + ": expected '" +
                         std::string(kAuctionLogHeader) + "'");
    }
    break;
  }

  RecordBuilder builder(log);
  auto handle = [&](const std::string& text) {
    std::string opp_id;
    try {
      Row row = json ? row_from_json(text) : row_from_csv(text);
      opp_id = row.opp_id;
      builder.add(row);
    } catch (const InvalidInput& e) {
      log.errors.push_back({line_no, e.what()});
      if (!opp_id.empty()) builder.poison(opp_id);
    }
  };

  if (json && !line.empty()) handle(line);
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    handle(line);
  }
  builder.flush();
  return log;
}

ParsedLog parse_auction_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read auction log " + path.string());
  return parse_auction_log(in);
}

void write_auction_log(std::ostream& out, const std::vector<AuctionRecord>& records) {
  out << kAuctionLogHeader << '\n';
  for (const auto& r : records) {
    const std::string prefix = std::to_string(r.block_height) + ',' + r.opp_id + ',' +
                               format_double(r.mev_value) + ',' + join_route(r.route) + ',';
    if (r.bids.empty()) {
      out << prefix << ",,,\n";
      continue;
    }
    for (const auto& bid : r.bids) {
      const bool won = r.winner_id && *r.winner_id == bid.searcher_id;
      out << prefix << bid.searcher_id << ',' << format_double(bid.fraction) << ','
          << format_double(bid.latency_ms) << ',' << (won ? '1' : '0') << '\n';
    }
  }
}

void write_auction_log(const std::filesystem::path& path, const std::vector<AuctionRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  write_auction_log(out, records);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace mevbid
