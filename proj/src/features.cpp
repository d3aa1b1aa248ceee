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

#include "mevbid/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mevbid/errors.hpp"

namespace mevbid {
namespace {

std::size_t vocabulary_slot(const std::string& protocol, std::span<const std::string> vocabulary) {
  auto it = std::find(vocabulary.begin(), vocabulary.end(), protocol);
  return static_cast<std::size_t>(it - vocabulary.begin());  // == size() for "other"
}

}  // namespace

std::vector<double> route_features(const Opportunity& opportunity, std::span<const std::string> vocabulary,
                                   double max_route_length) {
  if (vocabulary.empty()) throw ConfigError("protocol vocabulary is empty");
  if (opportunity.route.empty()) throw InvalidInput("opportunity " + opportunity.id + " has an empty route");
  const std::size_t one_hot = vocabulary.size() + 1;
  std::vector<double> out(ObservationLayout::kRouteScalars + 2 * one_hot, 0.0);
  const std::set<std::string> distinct(opportunity.route.begin(), opportunity.route.end());
  out[0] = static_cast<double>(opportunity.route.size()) / max_route_length;
  out[1] = static_cast<double>(distinct.size()) / max_route_length;
  out[2] = std::log1p(opportunity.route_frequency);
  out[ObservationLayout::kRouteScalars + vocabulary_slot(opportunity.route.front(), vocabulary)] = 1.0;
  out[ObservationLayout::kRouteScalars + one_hot + vocabulary_slot(opportunity.route.back(), vocabulary)] = 1.0;
  return out;
}

std::vector<std::size_t> sample_history(std::size_t window_size, std::size_t k, RngStream& rng) {
  std::vector<std::size_t> positions(window_size);
  std::iota(positions.begin(), positions.end(), 0);
  if (window_size <= k) return positions;
  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(window_size - i);
    std::swap(positions[i], positions[j]);
  }
  positions.resize(k);
  std::sort(positions.begin(), positions.end());
  return positions;
}

}  // namespace mevbid
