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

#include "mevbid/auction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mevbid/errors.hpp"

namespace mevbid {

double AuctionOutcome::threshold_for(const SearcherId& id) const {
  auto it = threshold_per_bidder.find(id);
  return it == threshold_per_bidder.end() ? 0.0 : it->second;
}

void RewardParams::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("reward epsilon must be > 0");
  if (!(lambda_loss >= 0.0)) throw ConfigError("reward lambda_loss must be >= 0");
  if (!(alpha_overbid >= 0.0)) throw ConfigError("reward alpha_overbid must be >= 0");
}

void EvalTally::add(bool won, double profit, double counterfactual) {
  wins.push_back(won);
  profits.push_back(won ? profit : 0.0);
  counterfactual_max.push_back(counterfactual);
}

void EvalTally::validate() const {
  if (profits.size() != wins.size() || counterfactual_max.size() != wins.size()) {
    throw InvalidInput("EvalTally lists differ in length");
  }
  for (std::size_t i = 0; i < wins.size(); ++i) {
    if (!wins[i] && profits[i] != 0.0) throw InvalidInput("EvalTally: profit on a lost auction");
    if (counterfactual_max[i] < 0.0) throw InvalidInput("EvalTally: negative counterfactual");
  }
}

AuctionOutcome resolve_auction(std::span<const BidSubmission> bids, double window_ms) {
  if (!(window_ms > 0.0)) throw InvalidInput("auction window must be positive");

  std::set<SearcherId> seen;
  for (const auto& bid : bids) {
    if (!seen.insert(bid.searcher_id).second) {
      throw InvalidInput("duplicate searcher id in auction: " + bid.searcher_id);
    }
    if (!(bid.fraction >= 0.0 && bid.fraction <= 1.0)) {
      throw InvalidInput("bid fraction outside [0,1] for " + bid.searcher_id);
    }
    if (!(bid.latency_ms >= 0.0)) {
      throw InvalidInput("negative latency for " + bid.searcher_id);
    }
  }

  AuctionOutcome outcome;
  std::vector<const BidSubmission*> on_time;
  for (const auto& bid : bids) {
    if (bid.latency_ms > window_ms) {
      ++outcome.num_late;
    } else {
      on_time.push_back(&bid);
    }
  }
  std::sort(on_time.begin(), on_time.end(),
            [](const BidSubmission* a, const BidSubmission* b) { return a->searcher_id < b->searcher_id; });

  // Top two fractions are enough to give every bidder its threshold.
  double best = -1.0;
  double second = -1.0;
  std::size_t best_count = 0;
  for (const auto* bid : on_time) {
    outcome.on_time_bidders.push_back(bid->searcher_id);
    if (bid->fraction > best) {
      second = best;
      best = bid->fraction;
      best_count = 1;
    } else if (bid->fraction == best) {
      second = best;
      ++best_count;
    } else if (bid->fraction > second) {
      second = bid->fraction;
    }
  }

  for (const auto* bid : on_time) {
    double threshold = (bid->fraction == best && best_count == 1) ? second : best;
    outcome.threshold_per_bidder[bid->searcher_id] = std::max(threshold, 0.0);
  }
  if (best_count == 1) {
    for (const auto* bid : on_time) {
      if (bid->fraction == best) {
        outcome.winner = bid->searcher_id;
        outcome.winning_fraction = best;
      }
    }
  }
  return outcome;
}

double realized_profit(double fraction, double mev, bool won) {
  return won ? (1.0 - fraction) * mev : 0.0;
}

double shaped_reward(double fraction, double mev, double threshold, bool won,
                     const RewardParams& params) {
  const double profit = realized_profit(fraction, mev, won);
  double reward = profit / (mev + params.epsilon);
  if (!won) reward -= params.lambda_loss;
  reward -= params.alpha_overbid * std::max(fraction - threshold, 0.0);
  return reward;
}

double counterfactual_max_profit(double threshold, double mev, double epsilon) {
  return std::max(0.0, (1.0 - (threshold + epsilon)) * mev);
}

double win_ratio(const EvalTally& tally) {
  if (tally.size() == 0) throw UndefinedMetric("win ratio over zero auctions");
  const auto won = std::count(tally.wins.begin(), tally.wins.end(), true);
  return static_cast<double>(won) / static_cast<double>(tally.size());
}

double profit_capture_ratio(double sum_profit, double upper_bound) {
  if (upper_bound == 0.0) throw UndefinedMetric("max-profit capture with zero upper bound");
  return sum_profit / upper_bound;
}

ProfitCapture max_profit_capture(const EvalTally& tally) {
  ProfitCapture pc;
  pc.sum_profit = std::accumulate(tally.profits.begin(), tally.profits.end(), 0.0);
  pc.upper_bound = std::accumulate(tally.counterfactual_max.begin(), tally.counterfactual_max.end(), 0.0);
  pc.mpc = profit_capture_ratio(pc.sum_profit, pc.upper_bound);
  return pc;
}

}  // namespace mevbid
