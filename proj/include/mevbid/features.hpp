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

// Fixed-length observation vectors for the bidding environments.
//
// Layout for a vocabulary of V protocols and K history samples:
//   route block   3 + 2 (V + 1): length / max_len, distinct / max_len,
//                 log1p(route frequency), first-hop one-hot, last-hop one-hot
//                 (slot V is "other")
//   window block  5: own-valid flag, own win rate, disclosed-valid flag,
//                 log1p(mean competitor count), mean disclosed winning fraction
//   history block K slots of 8: valid flag, length / max_len,
//                 distinct / max_len, log1p(route frequency), had-winner flag,
//                 disclosed winning fraction, agent-won flag, agent bid
// Padded slots are all zero, including their valid flag.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mevbid/auction.hpp"
#include "mevbid/rng.hpp"

namespace mevbid {

using Observation = std::vector<double>;

struct ObservationLayout {
  static constexpr std::size_t kRouteScalars = 3;
  static constexpr std::size_t kWindowSize = 5;
  static constexpr std::size_t kHistorySlotSize = 8;

  std::size_t vocabulary_size = 0;
  std::size_t history_samples = 0;

  std::size_t one_hot_size() const { return vocabulary_size + 1; }
  std::size_t route_size() const { return kRouteScalars + 2 * one_hot_size(); }
  std::size_t first_hop_offset() const { return kRouteScalars; }
  std::size_t last_hop_offset() const { return kRouteScalars + one_hot_size(); }
  std::size_t window_offset() const { return route_size(); }
  std::size_t history_offset() const { return route_size() + kWindowSize; }
  std::size_t history_slot_offset(std::size_t slot) const {
    return history_offset() + slot * kHistorySlotSize;
  }
  std::size_t total_size() const { return history_offset() + history_samples * kHistorySlotSize; }
};

std::vector<double> route_features(const Opportunity& opportunity, std::span<const std::string> vocabulary,
                                   double max_route_length = 6.0);

// K positions out of a window of window_size entries, uniform without
// replacement, in ascending order. Fewer than K entries: all of them (the
// caller pads the rest).
std::vector<std::size_t> sample_history(std::size_t window_size, std::size_t k, RngStream& rng);

}  // namespace mevbid
