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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mevbid/auction.hpp"
#include "mevbid/cli.hpp"
#include "mevbid/dataset.hpp"
#include "mevbid/features.hpp"
#include "mevbid/ppo.hpp"
#include "mevbid/synthetic.hpp"
#include "mevbid/trainer.hpp"

namespace fs = std::filesystem;
using namespace mevbid;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// 1 ------------------------------------------------------------------------
Outcome table_mpc() {
  struct Row {
    double sp, ub, mpc_pct;
  };
  const Row rows[] = {{33998, 60126, 56.54}, {45070, 60126, 74.95}, {48660, 60126, 80.93},
                      {107881, 221108, 48.79}, {99341, 221108, 44.90}};
  double worst = 0.0;
  for (const auto& r : rows) {
    EvalTally t;
    t.add(true, r.sp, r.ub);
    const double got = 100.0 * max_profit_capture(t).mpc;
    worst = std::max(worst, std::abs(got - r.mpc_pct));
  }
  return {worst <= 0.05, fmt("max |MPC - table| = %.4f pp over 5 rows", worst)};
}

// 2 ------------------------------------------------------------------------
Outcome reward_suite() {
  const RewardParams p{1e-9, 0.05, 0.1};
  bool ok = std::abs(shaped_reward(0.4, 100, 0.3, true, p) - 0.59) <= 1e-9 &&
            std::abs(shaped_reward(0.2, 100, 0.3, false, p) + 0.05) <= 1e-12 &&
            shaped_reward(0.0, 0.0, 0.0, false, RewardParams{1e-9, 0.0, 0.1}) == 0.0;
  RngStream rng(2024, 2);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double threshold = rng.uniform();
    const double v = 1000.0 * rng.uniform();
    const RewardParams q{1e-9, rng.uniform(), rng.uniform()};
    const double lose = threshold * rng.uniform();
    if (shaped_reward(lose, v, threshold, false, q) != -q.lambda_loss) ++bad;
    const double b1 = threshold + (1.0 - threshold) * rng.uniform();
    const double b2 = b1 + (1.0 - b1) * rng.uniform();
    if (shaped_reward(b1, v, threshold, true, q) < shaped_reward(b2, v, threshold, true, q)) ++bad;
    // a winning bid never beats the counterfactual by more than eps v
    if (realized_profit(b1, v, wins_against(b1, threshold)) >
        counterfactual_max_profit(threshold, v, q.epsilon) + q.epsilon * v + 1e-12) {
      ++bad;
    }
  }
  ok = ok && bad == 0;
  return {ok, fmt("examples ok, %.0f property violations over 10000 inputs", double(bad))};
}

// 3 ------------------------------------------------------------------------
Outcome oracle_equivalence() {
  double worst = 0.0, gap = 0.0;
  std::vector<ScenarioStream> streams;
  for (std::uint64_t seed : {1, 2, 3}) {
    SyntheticLogSpec spec;
    spec.opportunities.count = 800;
    spec.profiles = default_market_profiles();
    RngStream rng(seed, 30);
    const auto log = preprocess(generate_synthetic_log(spec, rng), PreprocessOptions{}).records;
    streams.push_back(build_historical_participation(log));
    streams.push_back(build_leader_replacement(log, identify_leader(log)));
    OpportunitySpec ospec;
    ospec.count = 500;
    const auto opps = generate_opportunities(ospec, rng);
    streams.push_back(simulate_scenario(opps, default_market_profiles(), kDefaultWindowMs, rng));
  }
  EnvConfig env;
  for (const auto& s : streams) {
    const EvalResult r = evaluate(oracle_bidder(env.reward.epsilon), s, env);
    worst = std::max(worst, std::abs(r.row.mpc - 1.0));
    gap = std::max(gap, std::abs(r.row.sum_profit - r.row.upper_bound) / r.row.upper_bound);
  }
  return {worst <= 1e-9 && gap <= 1e-9,
          fmt("%.0f streams, max |MPC-1| = %.2e, max |SP-UB|/UB = %.2e", double(streams.size()), worst, gap)};
}

// 4 ------------------------------------------------------------------------
std::vector<double> brute_force_gae(const std::vector<double>& r, const std::vector<double>& v,
                                    const std::vector<bool>& done, double gamma, double lambda, double boot) {
  std::vector<double> adv(r.size(), 0.0);
  for (std::size_t t = 0; t < r.size(); ++t) {
    double w = 1.0;
    for (std::size_t k = t; k < r.size(); ++k) {
      const double next = k + 1 < r.size() ? v[k + 1] : boot;
      adv[t] += w * (r[k] + (done[k] ? 0.0 : gamma * next) - v[k]);
      if (done[k]) break;
      w *= gamma * lambda;
    }
  }
  return adv;
}

Outcome gae_brute_force() {
  const std::pair<double, double> combos[] = {{0.0, 0.95}, {0.99, 0.95}, {1.0, 1.0}, {0.5, 0.0}};
  RngStream rng(4, 4);
  double worst = 0.0;
  std::size_t cases = 0;
  for (const auto& [gamma, lambda] : combos) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.uniform_index(32);
      std::vector<double> r(n), v(n);
      std::vector<bool> d(n);
      for (std::size_t i = 0; i < n; ++i) {
        r[i] = rng.normal();
        v[i] = rng.normal();
        d[i] = rng.uniform() < 0.15;
      }
      const double boot = rng.normal();
      const auto got = compute_gae(r, v, d, gamma, lambda, boot);
      const auto ref = brute_force_gae(r, v, d, gamma, lambda, boot);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got.advantages[i] - ref[i]));
      ++cases;
    }
  }
  return {worst <= 1e-10, fmt("%.0f sequences, max abs error %.2e", double(cases), worst)};
}

// 5 ------------------------------------------------------------------------
Outcome gradient_checks() {
  OpportunitySpec ospec;
  ospec.count = 64;
  RngStream rng(5, 5);
  const auto opps = generate_opportunities(ospec, rng);
  auto stream = std::make_shared<const ScenarioStream>(
      simulate_scenario(opps, default_market_profiles(), kDefaultWindowMs, rng));
  double worst = 0.0;
  int nets = 0;
  for (int trial = 0; trial < 12; ++trial) {
    EnvConfig env;
    if (trial % 2) env.mode = EnvMode::history_conditioned;
    BiddingEnv e = make_replay_env(env, stream);
    e.reset(trial);
    ActorCritic policy = ActorCritic::create(env.observation_size(), {8 + std::size_t(trial), 6}, rng);
    for (auto& w : policy.network().parameters()) w += 0.3 * rng.normal();
    Trajectory t = collect_rollout(policy, e, 24, rng);
    for (auto& lp : t.log_probs) lp += 0.05 * rng.normal();
    const RolloutBatch batch = make_batch({t}, 0.9, 0.9);
    const auto adv = normalize_advantages(batch.advantages);
    std::vector<std::size_t> idx(batch.size());
    std::iota(idx.begin(), idx.end(), 0);
    PPOConfig cfg;
    cfg.entropy_coef = 0.05;
    std::vector<double> grad(policy.network().parameter_count(), 0.0);
    minibatch_loss(policy, batch, adv, idx, cfg, grad);
    auto params = policy.network().parameters();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double keep = params[k], h = 1e-6;
      params[k] = keep + h;
      const double up = minibatch_loss(policy, batch, adv, idx, cfg, {}).total;
      params[k] = keep - h;
      const double down = minibatch_loss(policy, batch, adv, idx, cfg, {}).total;
      params[k] = keep;
      const double fd = (up - down) / (2 * h);
      num += (fd - grad[k]) * (fd - grad[k]);
      den += fd * fd;
    }
    worst = std::max(worst, std::sqrt(num / std::max(den, 1e-300)));
    ++nets;
  }
  return {worst < 1e-4 && nets >= 10, fmt("%.0f networks, max relative error %.2e", double(nets), worst)};
}

// 6, 7 ---------------------------------------------------------------------
struct ConvergenceRun {
  double mpc = 0.0, wr = 0.0, mean_bid = 0.0, seconds = 0.0;
};

ConvergenceRun run_convergence(bool contested, const PPOConfig& ppo) {
  const auto start = std::chrono::steady_clock::now();
  OpportunitySpec ospec;
  ospec.count = 4096;
  RngStream orng(ppo.seed, 5);
  auto opps = std::make_shared<const std::vector<Opportunity>>(generate_opportunities(ospec, orng));
  std::vector<SearcherProfile> profiles;
  if (contested) {
    SearcherProfile p;
    p.searcher_id = "opp";
    p.arrival_prob_by_complexity = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
    p.latency_mean_ms = 1.0;
    p.bid_fraction = BidFractionDist::fixed(0.30);
    profiles.push_back(p);
  }
  EnvConfig env;
  RngStream vrng(ppo.seed, 6);
  ospec.count = 500;
  auto vopps = generate_opportunities(ospec, vrng);
  auto val = std::make_shared<const ScenarioStream>(simulate_scenario(vopps, profiles, kDefaultWindowMs, vrng));
  // held-out evaluation stream, never seen in training or model selection
  RngStream erng(ppo.seed, 7);
  ospec.count = 1000;
  auto eopps = generate_opportunities(ospec, erng);
  const ScenarioStream eval_stream = simulate_scenario(eopps, profiles, kDefaultWindowMs, erng);

  TrainOptions opt;
  opt.ppo = ppo;
  opt.validation = val;
  const TrainResult res = train(opt, [&](std::size_t w) {
    return make_simulated_env(env, opps, profiles, kDefaultWindowMs, 100 + w);
  });
  auto policy = std::make_shared<const ActorCritic>(res.best.policy);
  std::vector<double> bids;
  const BidFunction record = [&](const DecisionContext& ctx) {
    const double b = policy->mean_action(ctx.observation);
    bids.push_back(b);
    return b;
  };
  const EvalResult ev = evaluate(record, eval_stream, env);
  ConvergenceRun out;
  out.mpc = ev.row.mpc;
  out.wr = ev.row.win_ratio;
  out.mean_bid = std::accumulate(bids.begin(), bids.end(), 0.0) / double(bids.size());
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

PPOConfig contested_config() {
  PPOConfig c;
  c.learning_rate = 3e-3;
  c.minibatch_size = 64;
  c.entropy_coef = 0.001;
  c.max_updates = 200;
  c.seed = 11;
  return c;
}

Outcome convergence_contested() {
  const ConvergenceRun r = run_convergence(true, contested_config());
  // with default hyperparameters, for the record
  PPOConfig d;
  d.seed = 11;
  const ConvergenceRun base = run_convergence(true, d);
  const bool ok = r.mpc >= 0.90 && r.wr >= 0.95 && r.seconds < 600.0;
  return {ok, fmt("MPC %.4f WR %.4f mean bid %.4f in %.0f s", r.mpc, r.wr, r.mean_bid, r.seconds) +
                  fmt(" (library defaults: MPC %.4f WR %.4f)", base.mpc, base.wr)};
}

Outcome convergence_uncontested() {
  PPOConfig c;
  c.seed = 11;
  const ConvergenceRun r = run_convergence(false, c);
  const bool ok = r.mean_bid <= 0.10 && r.mpc >= 0.95 && r.seconds < 600.0;
  return {ok, fmt("mean bid %.4f MPC %.4f WR %.4f in %.0f s", r.mean_bid, r.mpc, r.wr, r.seconds)};
}

// 8 ------------------------------------------------------------------------
Outcome scenario_builders() {
  std::size_t violations = 0, checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SyntheticLogSpec spec;
    spec.opportunities.count = 300;
    spec.profiles = default_market_profiles();
    RngStream rng(seed, 8);
    const auto log = preprocess(generate_synthetic_log(spec, rng), PreprocessOptions{}).records;
    const SearcherId leader = identify_leader(log);
    const ScenarioStream lr = build_leader_replacement(log, leader);
    for (const auto& rec : lr.records) {
      const auto& orig = *std::find_if(log.begin(), log.end(), [&](const auto& r) { return r.opp_id == rec.opportunity.id; });
      double expected = 0.0;
      for (const auto& b : orig.bids) {
        if (b.searcher_id != leader && b.latency_ms <= kDefaultWindowMs) expected = std::max(expected, b.fraction);
      }
      if (rec.threshold != expected) ++violations;
      for (const auto& b : rec.removed_bids) violations += b.searcher_id != leader;
      ++checked;
    }
    const ScenarioStream hp = build_historical_participation(log);
    if (hp.size() != log.size()) ++violations;
    for (std::size_t i = 0; i < std::min(hp.size(), log.size()); ++i) {
      double expected = 0.0;
      for (const auto& b : log[i].bids) {
        if (b.latency_ms <= kDefaultWindowMs) expected = std::max(expected, b.fraction);
      }
      violations += hp.records[i].threshold != expected;
      ++checked;
    }
  }
  return {violations == 0 && checked > 0,
          fmt("%.0f records over 20 generated logs, %.0f violations", double(checked), double(violations))};
}

// 9 ------------------------------------------------------------------------
Outcome history_sampling() {
  RngStream rng(9, 9);
  const int draws = 100000;
  std::vector<int> hits(10, 0);
  std::size_t bad = 0;
  for (int d = 0; d < draws; ++d) {
    const auto idx = sample_history(10, 5, rng);
    if (idx.size() != 5) ++bad;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= 10 || (i > 0 && idx[i] <= idx[i - 1])) ++bad;
      if (idx[i] < 10) ++hits[idx[i]];
    }
  }
  double worst = 0.0;
  for (int h : hits) worst = std::max(worst, std::abs(h / double(draws) - 0.5));
  return {bad == 0 && worst <= 0.01, fmt("max |freq - 0.5| = %.4f, %.0f malformed draws", worst, double(bad))};
}

// 10 -----------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path root = fs::temp_directory_path() / ("mevbid_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  auto pipeline = [&](const fs::path& dir) {
    std::ostringstream out, err;
    const std::string d = dir.string();
    const std::vector<std::vector<std::string>> steps = {
        {"--seed", "42", "--out-dir", d + "/log", "synth", "--count", "2000"},
        {"--seed", "42", "--out-dir", d + "/data", "ingest", "--log", d + "/log/auction_log.csv"},
        {"--seed", "42", "--out-dir", d + "/model", "train", "--train", d + "/data/train.csv", "--updates", "20"},
        {"--seed", "42", "--out-dir", d + "/eval", "eval", "--checkpoint", d + "/model/checkpoint.txt", "--test",
         d + "/data/test.csv", "--train", d + "/data/train.csv"},
    };
    for (const auto& s : steps) {
      if (run_cli(s, out, err) != kExitOk) throw std::runtime_error("pipeline step failed: " + err.str());
    }
  };
  pipeline(root / "a");
  pipeline(root / "b");
  std::size_t compared = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a/eval")) {
    const std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;  // records the output paths
    ++compared;
    differing += slurp(entry.path()) != slurp(root / "b/eval" / name);
  }
  for (const char* f : {"log/auction_log.csv", "data/train.csv", "data/test.csv", "model/checkpoint.txt",
                        "model/learning_curve.csv"}) {
    ++compared;
    differing += slurp(root / "a" / f) != slurp(root / "b" / f);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::remove_all(root);
  return {differing == 0 && compared >= 8 && secs < 120.0,
          fmt("%.0f files compared, %.0f differ, %.0f s", double(compared), double(differing), secs)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"metric identity", table_mpc},
      {"reward formula suite", reward_suite},
      {"oracle equivalence", oracle_equivalence},
      {"GAE brute-force equivalence", gae_brute_force},
      {"gradient checks", gradient_checks},
      {"synthetic convergence A (contested)", convergence_contested},
      {"synthetic convergence B (uncontested)", convergence_uncontested},
      {"scenario-builder correctness", scenario_builders},
      {"history-sampling law", history_sampling},
      {"end-to-end determinism", end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
