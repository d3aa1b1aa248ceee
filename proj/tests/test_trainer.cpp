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

#include <algorithm>
#include <cmath>

#include "mevbid/errors.hpp"
#include "mevbid/synthetic.hpp"
#include "mevbid/trainer.hpp"

namespace mevbid {
namespace {

std::vector<Opportunity> opportunities(std::size_t count, std::uint64_t seed) {
  OpportunitySpec spec;
  spec.count = count;
  RngStream rng(seed, 1);
  return generate_opportunities(spec, rng);
}

SearcherProfile rival(double fraction) {
  SearcherProfile p;
  p.searcher_id = "rival";
  p.arrival_prob_by_complexity = {{1, 0.9}, {2, 0.7}, {3, 0.5}};
  p.latency_mean_ms = 40.0;
  p.bid_fraction = BidFractionDist::fixed(fraction);
  return p;
}

ScenarioStream contested_stream(std::size_t count, std::uint64_t seed) {
  RngStream rng(seed, 2);
  return simulate_scenario(opportunities(count, seed), {rival(0.3)}, kDefaultWindowMs, rng);
}

TEST(Evaluate, OracleCapturesEverything) {
  const ScenarioStream s = contested_stream(400, 1);
  EnvConfig env;
  const EvalResult r = evaluate(oracle_bidder(env.reward.epsilon), s, env);
  EXPECT_NEAR(r.row.mpc, 1.0, 1e-9);
  EXPECT_NEAR(r.row.sum_profit, r.row.upper_bound, 1e-9 * r.row.upper_bound);
  EXPECT_DOUBLE_EQ(r.row.win_ratio, 1.0);
  EXPECT_EQ(r.tally.size(), 400u);
  EXPECT_EQ(r.row.setting, to_string(ScenarioKind::historical_participation));
}

TEST(Evaluate, ExtremeConstantBids) {
  const ScenarioStream s = contested_stream(300, 2);
  const EvalResult all_in = evaluate(constant_bidder(1.0), s, EnvConfig{});
  EXPECT_DOUBLE_EQ(all_in.row.win_ratio, 1.0);
  EXPECT_DOUBLE_EQ(all_in.row.sum_profit, 0.0);
  const EvalResult none = evaluate(constant_bidder(0.0), s, EnvConfig{});
  // strict rule: a zero bid does not beat an empty threshold either
  EXPECT_DOUBLE_EQ(none.row.win_ratio, 0.0);
  EXPECT_DOUBLE_EQ(none.row.sum_profit, 0.0);
}

TEST(Evaluate, ZeroWinRatioAgainstCertainRival) {
  RngStream rng(3, 2);
  SearcherProfile always = rival(0.3);
  always.arrival_prob_by_complexity = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
  always.latency_mean_ms = 1.0;
  const ScenarioStream s = simulate_scenario(opportunities(200, 3), {always}, kDefaultWindowMs, rng);
  EXPECT_DOUBLE_EQ(evaluate(constant_bidder(0.0), s, EnvConfig{}).row.win_ratio, 0.0);
  // tie at the rival's bid loses
  EXPECT_DOUBLE_EQ(evaluate(constant_bidder(0.3), s, EnvConfig{}).row.win_ratio, 0.0);
}

TEST(Evaluate, IdempotentAndRejectsEmpty) {
  const ScenarioStream s = contested_stream(200, 4);
  RngStream rng(4, 4);
  auto policy = std::make_shared<const ActorCritic>(ActorCritic::create(EnvConfig{}.observation_size(), {8}, rng));
  const EvalResult a = evaluate(deterministic_bidder(policy), s, EnvConfig{});
  const EvalResult b = evaluate(deterministic_bidder(policy), s, EnvConfig{});
  EXPECT_EQ(a.tally.profits, b.tally.profits);
  EXPECT_EQ(a.row.mpc, b.row.mpc);
  const EvalResult c = evaluate(stochastic_bidder(policy, 9), s, EnvConfig{});
  const EvalResult d = evaluate(stochastic_bidder(policy, 9), s, EnvConfig{});
  EXPECT_EQ(c.tally.profits, d.tally.profits);
  EXPECT_THROW(evaluate(constant_bidder(0.5), ScenarioStream{}, EnvConfig{}), InvalidInput);
}

TEST(Evaluate, IncumbentReplaysRemovedBid) {
  ScenarioStream s;
  s.kind = ScenarioKind::leader_replacement;
  ScenarioRecord r;
  r.opportunity.id = "x";
  r.opportunity.mev_value = 10.0;
  r.opportunity.route = {"uniswap"};
  r.threshold = 0.2;
  r.competitor_count = 1;
  r.removed_bids.push_back(HistoricalBid{"lead", 0.5, 10.0});
  s.records.push_back(r);
  const EvalResult e = evaluate(incumbent_bidder(), s, EnvConfig{});
  EXPECT_DOUBLE_EQ(e.row.win_ratio, 1.0);
  EXPECT_NEAR(e.row.sum_profit, 5.0, 1e-12);
}

TEST(Train, SameSeedSameCurve) {
  auto opps = std::make_shared<const std::vector<Opportunity>>(opportunities(512, 5));
  TrainOptions opt;
  opt.ppo.rollout_length = 128;
  opt.ppo.minibatch_size = 32;
  opt.ppo.epochs_per_update = 2;
  opt.ppo.max_updates = 3;
  opt.ppo.hidden_sizes = {16, 16};
  opt.ppo.seed = 13;
  opt.validation = std::make_shared<const ScenarioStream>(contested_stream(100, 6));
  auto factory = [&](std::size_t w) { return make_simulated_env(EnvConfig{}, opps, {rival(0.3)}, 250, 100 + w); };
  const TrainResult a = train(opt, factory);
  const TrainResult b = train(opt, factory);
  ASSERT_EQ(a.curve.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(format_curve_row(a.curve[i]), format_curve_row(b.curve[i]));
  EXPECT_TRUE(a.last.policy == b.last.policy);
  EXPECT_TRUE(a.best.policy == b.best.policy);
  EXPECT_EQ(a.last.update_index, 3u);
  EXPECT_TRUE(a.curve[0].validation_mpc.has_value());

  opt.ppo.workers = 2;
  const TrainResult c = train(opt, factory);
  const TrainResult d = train(opt, factory);
  EXPECT_TRUE(c.last.policy == d.last.policy);
}

TEST(Train, CurveFormat) {
  EXPECT_EQ(format_curve_header(),
            "update_index,mean_reward,WR,MPC,policy_loss,value_loss,entropy,clip_fraction,approx_kl");
  CurveRow row;
  row.update_index = 4;
  row.mean_reward = 0.5;
  const std::string line = format_curve_row(row);
  EXPECT_EQ(line.rfind("4,0.5,", 0), 0u);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
}

TEST(Train, InvalidConfigThrows) {
  TrainOptions opt;
  opt.ppo.clip_ratio = 2.0;
  auto opps = std::make_shared<const std::vector<Opportunity>>(opportunities(10, 1));
  EXPECT_THROW(train(opt, [&](std::size_t) { return make_simulated_env(EnvConfig{}, opps, {}, 250, 1); }),
               ConfigError);
}

}  // namespace
}  // namespace mevbid
