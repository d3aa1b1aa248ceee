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

#include "mevbid/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "mevbid/auction_log.hpp"
#include "mevbid/errors.hpp"

namespace mevbid {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kUpdateStream = 2;
constexpr std::uint64_t kWorkerStreamBase = 1000;

double safe_mpc(double sum_profit, double upper_bound) {
  return upper_bound > 0.0 ? profit_capture_ratio(sum_profit, upper_bound) : kNaN;
}

// Rollout worker: owns an environment, its episode counter and its action
// stream.
struct Worker {
  BiddingEnv env;
  RngStream rng;
  std::uint64_t base_seed;
  std::uint64_t episodes = 0;

  void next_episode() {
    env.reset(mix_seed(base_seed + episodes));
    ++episodes;
  }

  Trajectory collect(const ActorCritic& policy, std::size_t length) {
    Trajectory segment;
    while (segment.size() < length) {
      if (env.done() || episodes == 0) next_episode();
      segment.append(collect_rollout(policy, env, length - segment.size(), rng));
    }
    return segment;
  }
};

}  // namespace

BidFunction deterministic_bidder(std::shared_ptr<const ActorCritic> policy) {
  return [policy](const DecisionContext& ctx) { return policy->mean_action(ctx.observation); };
}

BidFunction stochastic_bidder(std::shared_ptr<const ActorCritic> policy, std::uint64_t seed) {
  auto rng = std::make_shared<RngStream>(seed, 77);
  return [policy, rng](const DecisionContext& ctx) { return policy->act(ctx.observation, *rng).action; };
}

BidFunction oracle_bidder(double epsilon) {
  return [epsilon](const DecisionContext& ctx) { return std::min(1.0, ctx.threshold + epsilon); };
}

BidFunction constant_bidder(double fraction) {
  return [fraction](const DecisionContext&) { return fraction; };
}

BidFunction incumbent_bidder() {
  return [](const DecisionContext& ctx) {
    if (!ctx.record) return 0.0;
    return removed_bid_fraction(*ctx.record).value_or(0.0);
  };
}

EvalResult evaluate(const BidFunction& bidder, const ScenarioStream& stream, const EnvConfig& env_config,
                    std::uint64_t seed) {
  if (stream.empty()) throw InvalidInput("cannot evaluate on an empty scenario stream");
  auto shared = std::make_shared<const ScenarioStream>(stream);
  BiddingEnv env = make_replay_env(env_config, shared);
  env.reset(seed);
  EvalResult result;
  while (!env.done()) {
    const AuctionDraw& draw = env.current_draw();
    DecisionContext ctx{env.observation(), draw.threshold, draw.record, env.index()};
    const StepResult step = env.step(bidder(ctx));
    result.tally.add(step.info.won, step.info.profit, step.info.counterfactual);
    result.thresholds.push_back(step.info.threshold);
    result.mev_values.push_back(step.info.mev);
  }
  result.row.setting = to_string(stream.kind);
  result.row.environment = to_string(env_config.mode);
  result.row.win_ratio = win_ratio(result.tally);
  result.row.sum_profit = std::accumulate(result.tally.profits.begin(), result.tally.profits.end(), 0.0);
  result.row.upper_bound =
      std::accumulate(result.tally.counterfactual_max.begin(), result.tally.counterfactual_max.end(), 0.0);
  result.row.mpc = safe_mpc(result.row.sum_profit, result.row.upper_bound);
  return result;
}

TrainResult train(const TrainOptions& options, const EnvFactory& make_env) {
  const PPOConfig& cfg = options.ppo;
  cfg.validate();

  std::vector<Worker> workers;
  for (std::size_t w = 0; w < cfg.workers; ++w) {
    workers.push_back(Worker{make_env(w), RngStream(cfg.seed, kWorkerStreamBase + 2 * w),
                             mix_seed(cfg.seed ^ (kWorkerStreamBase + 2 * w + 1)), 0});
  }
  const EnvConfig env_config = workers.front().env.config();

  RngStream init_rng(cfg.seed, kInitStream);
  RngStream update_rng(cfg.seed, kUpdateStream);
  auto policy = std::make_shared<ActorCritic>(
      ActorCritic::create(env_config.observation_size(), cfg.hidden_sizes, init_rng));
  AdamState optimizer(policy->network().parameter_count(), cfg.learning_rate);

  TrainResult result;
  double best_score = -std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (std::size_t update = 0; update < cfg.max_updates; ++update) {
    // Split the rollout across workers; segments are joined in worker order
    // so results do not depend on thread timing.
    std::vector<Trajectory> segments(workers.size());
    const std::size_t share = cfg.rollout_length / workers.size();
    const std::size_t extra = cfg.rollout_length % workers.size();
    auto run = [&](std::size_t w) { segments[w] = workers[w].collect(*policy, share + (w < extra ? 1 : 0)); };
    if (workers.size() == 1) {
      run(0);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < workers.size(); ++w) threads.emplace_back(run, w);
      for (auto& t : threads) t.join();
    }
    const RolloutBatch batch = make_batch(segments, cfg.gamma, cfg.gae_lambda);

    CurveRow row;
    row.update_index = update;
    double reward_sum = 0.0, profit = 0.0, ub = 0.0;
    std::size_t wins = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      reward_sum += batch.trajectory.rewards[i];
      const StepInfo& info = batch.trajectory.infos[i];
      wins += info.won ? 1 : 0;
      profit += info.profit;
      ub += info.counterfactual;
    }
    const double n = static_cast<double>(batch.size());
    row.mean_reward = reward_sum / n;
    row.win_ratio = static_cast<double>(wins) / n;
    row.mpc = safe_mpc(profit, ub);

    row.stats = ppo_update(*policy, optimizer, batch, cfg, update_rng);

    Checkpoint current{*policy, optimizer, env_config, update + 1};
    if (options.validation && !options.validation->empty()) {
      const EvalResult val = evaluate(deterministic_bidder(policy), *options.validation, env_config, cfg.seed);
      row.validation_mpc = val.row.mpc;
      const double score = std::isnan(val.row.mpc) ? -std::numeric_limits<double>::infinity() : val.row.mpc;
      if (!have_best || score > best_score) {
        best_score = score;
        result.best = current;
        have_best = true;
      }
    } else {
      result.best = current;
    }
    result.last = current;
    result.curve.push_back(row);
    if (options.on_update) options.on_update(row);
  }
  if (cfg.max_updates == 0) {
    result.last = Checkpoint{*policy, optimizer, env_config, 0};
    result.best = result.last;
  }
  return result;
}

std::string format_curve_header() {
  return "update_index,mean_reward,WR,MPC,policy_loss,value_loss,entropy,clip_fraction,approx_kl";
}

std::string format_curve_row(const CurveRow& row) {
  std::ostringstream os;
  os << row.update_index << ',' << format_double(row.mean_reward) << ',' << format_double(row.win_ratio) << ','
     << format_double(row.mpc) << ',' << format_double(row.stats.policy_loss) << ','
     << format_double(row.stats.value_loss) << ',' << format_double(row.stats.entropy) << ','
     << format_double(row.stats.clip_fraction) << ',' << format_double(row.stats.approx_kl);
  return os.str();
}

}  // namespace mevbid
