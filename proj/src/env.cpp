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

#include "mevbid/env.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "mevbid/errors.hpp"
#include "mevbid/synthetic.hpp"

namespace mevbid {
namespace {

constexpr std::uint64_t kHistoryStream = 0x4849535455ULL;

}  // namespace

std::string to_string(EnvMode mode) {
  return mode == EnvMode::stateless ? "stateless" : "history_conditioned";
}

EnvMode env_mode_from_string(const std::string& text) {
  if (text == "stateless") return EnvMode::stateless;
  if (text == "history_conditioned") return EnvMode::history_conditioned;
  throw ConfigError("unknown environment mode '" + text + "'");
}

EnvConfig::EnvConfig() : protocol_vocabulary(default_protocol_vocabulary()) {}

void EnvConfig::validate() const {
  if (history_samples < 1 || history_samples > history_window) {
    throw ConfigError("history samples K must satisfy 1 <= K <= H");
  }
  if (stats_window < 1) throw ConfigError("stats window W must be >= 1");
  if (protocol_vocabulary.empty()) throw ConfigError("protocol vocabulary is empty");
  if (!(max_route_length > 0.0)) throw ConfigError("max_route_length must be positive");
  regime.validate();
  reward.validate();
}

ObservationLayout EnvConfig::layout() const {
  return {protocol_vocabulary.size(), history_samples};
}

ReplaySource::ReplaySource(std::shared_ptr<const ScenarioStream> stream) : stream_(std::move(stream)) {
  if (!stream_) throw InvalidInput("null scenario stream");
}

const Opportunity& ReplaySource::opportunity(std::size_t index) const {
  return stream_->records.at(index).opportunity;
}

AuctionDraw ReplaySource::draw(std::size_t index) {
  const auto& rec = stream_->records.at(index);
  return {rec.threshold, rec.competitor_count, &rec};
}

std::unique_ptr<AuctionSource> ReplaySource::clone() const {
  return std::make_unique<ReplaySource>(*this);
}

SimulatedSource::SimulatedSource(std::shared_ptr<const std::vector<Opportunity>> opportunities,
                                 std::vector<SearcherProfile> profiles, double window_ms,
                                 std::uint64_t stream_id)
    : opportunities_(std::move(opportunities)),
      profiles_(std::move(profiles)),
      window_ms_(window_ms),
      stream_id_(stream_id),
      rng_(0, stream_id) {
  if (!opportunities_) throw InvalidInput("null opportunity list");
  if (!(window_ms_ > 0.0)) throw ConfigError("window_ms must be positive");
  for (const auto& p : profiles_) p.validate();
}

const Opportunity& SimulatedSource::opportunity(std::size_t index) const {
  return opportunities_->at(index);
}

void SimulatedSource::reset(std::uint64_t seed) {
  rng_ = RngStream(seed, stream_id_);
}

AuctionDraw SimulatedSource::draw(std::size_t index) {
  AuctionDraw d;
  for (const auto& bid : sample_opponent_bids(opportunities_->at(index), profiles_, rng_)) {
    if (bid.latency_ms > window_ms_) continue;
    d.threshold = std::max(d.threshold, bid.fraction);
    ++d.competitor_count;
  }
  return d;
}

std::unique_ptr<AuctionSource> SimulatedSource::clone() const {
  return std::make_unique<SimulatedSource>(*this);
}

BiddingEnv::BiddingEnv(EnvConfig config, std::unique_ptr<AuctionSource> source)
    : config_(std::move(config)), source_(std::move(source)), history_rng_(0, kHistoryStream) {
  config_.validate();
  if (!source_) throw InvalidInput("null auction source");
  observation_.assign(config_.observation_size(), 0.0);
}

BiddingEnv::BiddingEnv(const BiddingEnv& other)
    : config_(other.config_),
      source_(other.source_->clone()),
      history_rng_(other.history_rng_),
      t_(other.t_),
      started_(other.started_),
      draw_(other.draw_),
      observation_(other.observation_),
      past_(other.past_),
      own_wins_(other.own_wins_) {}

BiddingEnv& BiddingEnv::operator=(const BiddingEnv& other) {
  if (this != &other) {
    BiddingEnv copy(other);
    *this = std::move(copy);
  }
  return *this;
}

const Observation& BiddingEnv::reset(std::uint64_t seed) {
  if (source_->size() == 0) throw InvalidInput("cannot reset an environment over an empty stream");
  source_->reset(seed);
  history_rng_ = RngStream(seed, kHistoryStream);
  t_ = 0;
  started_ = true;
  past_.clear();
  own_wins_.clear();
  load_draw();
  build_observation();
  return observation_;
}

void BiddingEnv::load_draw() {
  draw_ = done() ? AuctionDraw{} : source_->draw(t_);
}

StepResult BiddingEnv::step(double action) {
  if (!started_) throw StateError("step before reset");
  if (done()) throw StateError("step after the stream is exhausted");
  if (!(action >= 0.0 && action <= 1.0)) {
    spdlog::warn("bid fraction {} outside [0,1]; clipping", action);
    action = std::isnan(action) ? 0.0 : std::clamp(action, 0.0, 1.0);
  }

  const Opportunity& opp = source_->opportunity(t_);
  StepResult result;
  result.info.action = action;
  result.info.threshold = draw_.threshold;
  result.info.mev = opp.mev_value;
  result.info.won = wins_against(action, draw_.threshold);
  result.info.profit = realized_profit(action, opp.mev_value, result.info.won);
  result.info.counterfactual = counterfactual_max_profit(draw_.threshold, opp.mev_value, config_.reward.epsilon);
  result.reward = shaped_reward(action, opp.mev_value, draw_.threshold, result.info.won, config_.reward);

  PastAuction past;
  const auto route = route_features(opp, config_.protocol_vocabulary, config_.max_route_length);
  past.route_summary.assign(route.begin(), route.begin() + ObservationLayout::kRouteScalars);
  past.agent_won = result.info.won;
  past.agent_bid = action;
  past.competitor_count = draw_.competitor_count;
  if (result.info.won) {
    past.had_winner = true;
    past.winning_fraction = action;
  } else if (draw_.competitor_count > 0 && action < draw_.threshold) {
    // Top competitor wins; a tie with the agent leaves no winner.
    past.had_winner = true;
    past.winning_fraction = draw_.threshold;
  }
  past_.push_back(std::move(past));
  own_wins_.push_back(result.info.won);
  if (own_wins_.size() > config_.stats_window) own_wins_.pop_front();

  ++t_;
  load_draw();
  build_observation();
  result.observation = observation_;
  result.done = done();
  return result;
}

void BiddingEnv::build_observation() {
  const ObservationLayout layout = config_.layout();
  observation_.assign(layout.total_size(), 0.0);
  if (done()) return;

  const auto route = route_features(source_->opportunity(t_), config_.protocol_vocabulary,
                                    config_.max_route_length);
  std::copy(route.begin(), route.end(), observation_.begin());
  if (config_.mode == EnvMode::stateless) return;

  // Own results are known immediately; everything about other bidders only
  // once disclosed.
  double* window = observation_.data() + layout.window_offset();
  if (!own_wins_.empty()) {
    window[0] = 1.0;
    window[1] = static_cast<double>(std::count(own_wins_.begin(), own_wins_.end(), true)) /
                static_cast<double>(own_wins_.size());
  }
  std::size_t last_visible = 0;
  if (!latest_visible_index(config_.regime, t_, last_visible)) return;
  const std::size_t visible = std::min(past_.size(), last_visible + 1);
  if (visible == 0) return;

  const std::size_t stats_begin = visible > config_.stats_window ? visible - config_.stats_window : 0;
  double count_sum = 0.0;
  double fraction_sum = 0.0;
  std::size_t with_winner = 0;
  for (std::size_t i = stats_begin; i < visible; ++i) {
    count_sum += static_cast<double>(past_[i].competitor_count);
    if (past_[i].had_winner) {
      fraction_sum += past_[i].winning_fraction;
      ++with_winner;
    }
  }
  window[2] = 1.0;
  window[3] = std::log1p(count_sum / static_cast<double>(visible - stats_begin));
  window[4] = with_winner ? fraction_sum / static_cast<double>(with_winner) : 0.0;

  const std::size_t hist_begin = visible > config_.history_window ? visible - config_.history_window : 0;
  const auto picks = sample_history(visible - hist_begin, config_.history_samples, history_rng_);
  for (std::size_t slot = 0; slot < picks.size(); ++slot) {
    const PastAuction& p = past_[hist_begin + picks[slot]];
    double* out = observation_.data() + layout.history_slot_offset(slot);
    out[0] = 1.0;
    std::copy(p.route_summary.begin(), p.route_summary.end(), out + 1);
    out[4] = p.had_winner ? 1.0 : 0.0;
    out[5] = p.winning_fraction;
    out[6] = p.agent_won ? 1.0 : 0.0;
    out[7] = p.agent_bid;
  }
}

BiddingEnv make_replay_env(const EnvConfig& config, std::shared_ptr<const ScenarioStream> stream) {
  return BiddingEnv(config, std::make_unique<ReplaySource>(std::move(stream)));
}

BiddingEnv make_simulated_env(const EnvConfig& config,
                              std::shared_ptr<const std::vector<Opportunity>> opportunities,
                              std::vector<SearcherProfile> profiles, double window_ms,
                              std::uint64_t stream_id) {
  return BiddingEnv(config, std::make_unique<SimulatedSource>(std::move(opportunities), std::move(profiles),
                                                              window_ms, stream_id));
}

}  // namespace mevbid
