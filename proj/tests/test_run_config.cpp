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


#include <gtest/gtest.h>

#include <sstream>

#include "mevbid/errors.hpp"
#include "mevbid/run_config.hpp"

namespace mevbid {
namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(RunConfig, EmptyGivesDefaults) {
  const RunConfig c = parse("");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.ppo.rollout_length, 2048u);
  EXPECT_DOUBLE_EQ(c.ppo.clip_ratio, 0.2);
  EXPECT_EQ(c.env.mode, EnvMode::stateless);
  EXPECT_FALSE(c.preprocess.min_mev_value.has_value());
  EXPECT_EQ(c.eval_scenarios.size(), 2u);
}

TEST(RunConfig, ParsesSections) {
  const RunConfig c = parse(R"(
# comment
[run]
seed = 99
workers = 2

[ingest]
small_mev_quantile = 0.2
min_mev_value = 1.5

[env]
mode = history_conditioned
history_window = 12
disclosure = delayed
disclosure_delay = 4

[ppo]
learning_rate = 0.001   ; inline note
hidden = 32, 16 # another

[train]
source = simulated

[eval]
scenarios = leader_replacement
leader = alice
)");
  EXPECT_FALSE(parse("[eval]\nleader =   ; nobody\n").leader_id.has_value());
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.workers, 2u);
  EXPECT_DOUBLE_EQ(c.preprocess.small_mev_quantile, 0.2);
  EXPECT_DOUBLE_EQ(*c.preprocess.min_mev_value, 1.5);
  EXPECT_EQ(c.env.mode, EnvMode::history_conditioned);
  EXPECT_EQ(c.env.history_window, 12u);
  EXPECT_EQ(c.env.regime.mode, InformationRegime::Mode::delayed);
  EXPECT_EQ(c.env.regime.delay_auctions, 4u);
  EXPECT_DOUBLE_EQ(c.ppo.learning_rate, 1e-3);
  EXPECT_EQ(c.ppo.hidden_sizes, (std::vector<std::size_t>{32, 16}));
  EXPECT_EQ(c.train_source, TrainSource::simulated);
  ASSERT_EQ(c.eval_scenarios.size(), 1u);
  EXPECT_EQ(c.eval_scenarios[0], ScenarioKind::leader_replacement);
  EXPECT_EQ(c.leader_id.value_or(""), "alice");
}

TEST(RunConfig, Profiles) {
  const RunConfig c = parse(R"(
[profile.fast]
arrival_1 = 0.5
latency_mean_ms = 10
bid_fixed = 0.3

[profile.slow]
bid_mean = 0.2
bid_variance = 0.01
)");
  ASSERT_EQ(c.profiles.size(), 2u);
  const auto& fast = c.profiles[0].searcher_id == "fast" ? c.profiles[0] : c.profiles[1];
  const auto& slow = c.profiles[0].searcher_id == "fast" ? c.profiles[1] : c.profiles[0];
  EXPECT_DOUBLE_EQ(fast.arrival_prob_by_complexity.at(1), 0.5);
  EXPECT_DOUBLE_EQ(fast.arrival_prob_by_complexity.at(2), 1.0);
  EXPECT_EQ(fast.bid_fraction.kind, BidFractionDist::Kind::fixed);
  EXPECT_DOUBLE_EQ(fast.bid_fraction.value, 0.3);
  EXPECT_NEAR(slow.bid_fraction.mean(), 0.2, 1e-12);
  expect_config_error("[profile.x]\nbid_fixed = 0.3\nbid_alpha = 2\n", "bid_fixed");
  expect_config_error("[profile.x]\nbid_mean = 0.3\n", "bid_variance");
  expect_config_error("[profile.x]\narrival_1 = 1.5\n", "profile.x");
  expect_config_error("[profile.x]\ncolour = red\n", "colour");
}

TEST(RunConfig, Errors) {
  expect_config_error("[ppo]\nlearning_rat = 0.1\n", "learning_rat");
  expect_config_error("[nonsense]\na = 1\n", "nonsense");
  expect_config_error("[run]\nseed = abc\n", "seed");
  expect_config_error("[ppo]\nclip_ratio = 1.5\n", "clip_ratio");
  expect_config_error("[env]\nmode = psychic\n", "mode");
  expect_config_error("[run]\nseed = 1\n[broken\n", "line");
  EXPECT_THROW(load_run_config("/nonexistent/run.ini"), InvalidInput);
}

TEST(RunConfig, DumpRoundTrips) {
  const RunConfig c = parse(R"(
[run]
seed = 3
[ingest]
min_mev_value = 0.25
[env]
mode = history_conditioned
vocabulary = a, b, c
[reward]
lambda_loss = 0.125
[profile.p]
bid_alpha = 2.5
bid_beta = 4
latency_mean_ms = 33.3
)");
  const std::string once = dump_run_config(c);
  const RunConfig back = parse(once);
  EXPECT_EQ(dump_run_config(back), once);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_EQ(back.env.protocol_vocabulary, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(back.profiles.size(), 1u);
  EXPECT_DOUBLE_EQ(back.profiles[0].latency_mean_ms, 33.3);
  EXPECT_EQ(dump_run_config(parse(dump_run_config(RunConfig{}))), dump_run_config(RunConfig{}));
}

}  // namespace
}  // namespace mevbid
