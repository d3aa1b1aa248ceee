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


#include "mevbid/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

#include "mevbid/actor_critic.hpp"
#include "mevbid/auction_log.hpp"
#include "mevbid/dataset.hpp"
#include "mevbid/errors.hpp"
#include "mevbid/run_config.hpp"
#include "mevbid/synthetic.hpp"
#include "mevbid/trainer.hpp"

namespace mevbid {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// RNG stream ids per command, so that changing one stage never shifts
// another stage's draws.
constexpr std::uint64_t kSynthStream = 11;
constexpr std::uint64_t kSimOpportunityStream = 21;
constexpr std::uint64_t kSimValidationStream = 22;
constexpr std::uint64_t kSimEnvStream = 300;

struct Overrides {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool stochastic_eval = false;
  std::size_t workers = 1;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* stochastic_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw InvalidInput("no " + what + " given");
  if (!fs::is_regular_file(path)) throw InvalidInput(what + " not found: " + path);
}

std::vector<AuctionRecord> read_log(const std::string& path, const std::string& what) {
  require_file(path, what);
  ParsedLog parsed = parse_auction_log(fs::path(path));
  if (!parsed.ok()) throw InvalidInput(path + ": malformed auction log\n" + parsed.error_report());
  return std::move(parsed.records);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + cfg.out_dir + ": " + ec.message());
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg, const json& inputs,
                    const json& outputs) {
  json m;
  m["tool"] = "mevbid";
  m["version"] = kVersion;
  m["checkpoint_version"] = kCheckpointVersion;
  m["command"] = command;
  m["seed"] = cfg.seed;
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  m["config"] = dump_run_config(cfg);
  write_json(dir / "manifest.json", m);
}

json block_range(const std::vector<AuctionRecord>& records) {
  json j;
  j["records"] = records.size();
  if (records.empty()) {
    j["first_block"] = nullptr;
    j["last_block"] = nullptr;
  } else {
    j["first_block"] = records.front().block_height;
    j["last_block"] = records.back().block_height;
  }
  return j;
}

// --- ingest -----------------------------------------------------------------

void cmd_ingest(RunConfig& cfg) {
  const auto records = read_log(cfg.log_path, "auction log");
  const fs::path dir = prepare_out_dir(cfg);
  PreprocessResult pre = preprocess(records, cfg.preprocess);
  if (pre.records.empty()) throw InvalidInput("no auctions survive preprocessing of " + cfg.log_path);
  auto [train, test] = chronological_split(pre.records, cfg.train_ratio);
  write_auction_log(dir / "train.csv", train);
  write_auction_log(dir / "test.csv", test);

  json summary;
  summary["input_records"] = pre.stats.input;
  summary["dropped"] = {{"negative_mev", pre.stats.dropped_negative},
                        {"small_mev", pre.stats.dropped_small},
                        {"winnerless", pre.stats.dropped_winnerless}};
  summary["mev_threshold"] = pre.stats.mev_threshold;
  summary["kept"] = pre.records.size();
  summary["train"] = block_range(train);
  summary["test"] = block_range(test);
  write_json(dir / "ingest_summary.json", summary);
  write_manifest(dir, "ingest", cfg, {{"log", cfg.log_path}},
                 {"train.csv", "test.csv", "ingest_summary.json"});
  spdlog::info("ingest: {} records, kept {}, train {}, test {}", pre.stats.input, pre.records.size(), train.size(),
               test.size());
}

// --- synth ------------------------------------------------------------------

void cmd_synth(RunConfig& cfg, const std::string& output) {
  SyntheticLogSpec spec;
  spec.opportunities = cfg.synth;
  spec.profiles = cfg.profiles.empty() ? default_market_profiles() : cfg.profiles;
  spec.window_ms = cfg.window_ms;
  const fs::path dir = prepare_out_dir(cfg);
  const fs::path path = output.empty() ? dir / "auction_log.csv" : fs::path(output);
  RngStream rng(cfg.seed, kSynthStream);
  const auto records = generate_synthetic_log(spec, rng);
  write_auction_log(path, records);
  json profiles = json::array();
  for (const auto& p : spec.profiles) profiles.push_back(p.searcher_id);
  write_manifest(dir, "synth", cfg, {{"profiles", profiles}}, {path.string()});
  spdlog::info("synth: {} auctions -> {}", records.size(), path.string());
}

// --- train ------------------------------------------------------------------

ScenarioStream build_scenario(ScenarioKind kind, const std::vector<AuctionRecord>& records,
                              const RouteFrequency& freq, const SearcherId& leader, double window_ms) {
  if (kind == ScenarioKind::leader_replacement) return build_leader_replacement(records, leader, freq, window_ms);
  return build_historical_participation(records, freq, window_ms);
}

SearcherId resolve_leader(const RunConfig& cfg, const std::vector<AuctionRecord>& reference) {
  if (cfg.leader_id) return *cfg.leader_id;
  return identify_leader(reference);
}

void cmd_train(RunConfig& cfg, std::optional<std::size_t> updates) {
  if (updates) cfg.ppo.max_updates = *updates;
  cfg.ppo.seed = cfg.seed;
  cfg.ppo.workers = cfg.workers;
  cfg.validate();

  TrainOptions options;
  options.ppo = cfg.ppo;
  EnvFactory factory;
  json inputs;
  inputs["source"] = cfg.train_source == TrainSource::replay ? "replay" : "simulated";

  if (cfg.train_source == TrainSource::replay) {
    const auto records = read_log(cfg.train_path, "training log");
    if (records.empty()) throw InvalidInput("training log has no auctions: " + cfg.train_path);
    inputs["train"] = cfg.train_path;
    const RouteFrequency freq(records);
    SearcherId leader;
    if (cfg.train_scenario == ScenarioKind::leader_replacement) {
      leader = resolve_leader(cfg, records);
      inputs["leader"] = leader;
    }
    std::vector<AuctionRecord> fit = records, held;
    if (cfg.validation_fraction > 0.0 && records.size() > 1) {
      std::tie(fit, held) = chronological_split(records, 1.0 - cfg.validation_fraction);
    }
    auto stream = std::make_shared<const ScenarioStream>(
        build_scenario(cfg.train_scenario, fit, freq, leader, cfg.window_ms));
    if (stream->empty()) throw InvalidInput("training scenario is empty");
    if (!held.empty()) {
      auto val = build_scenario(cfg.train_scenario, held, freq, leader, cfg.window_ms);
      if (!val.empty()) options.validation = std::make_shared<const ScenarioStream>(std::move(val));
    }
    const EnvConfig env = cfg.env;
    factory = [env, stream](std::size_t) { return make_replay_env(env, stream); };
  } else {
    OpportunitySpec spec = cfg.synth;
    spec.count = cfg.sim_opportunities;
    RngStream opp_rng(cfg.seed, kSimOpportunityStream);
    auto opps = std::make_shared<const std::vector<Opportunity>>(generate_opportunities(spec, opp_rng));
    if (cfg.sim_validation_opportunities > 0) {
      spec.count = cfg.sim_validation_opportunities;
      RngStream val_rng(cfg.seed, kSimValidationStream);
      const auto val_opps = generate_opportunities(spec, val_rng);
      options.validation = std::make_shared<const ScenarioStream>(
          simulate_scenario(val_opps, cfg.profiles, cfg.window_ms, val_rng));
    }
    const EnvConfig env = cfg.env;
    const auto profiles = cfg.profiles;
    const double window = cfg.window_ms;
    factory = [env, opps, profiles, window](std::size_t w) {
      return make_simulated_env(env, opps, profiles, window, kSimEnvStream + w);
    };
  }

  const fs::path dir = prepare_out_dir(cfg);
  options.on_update = [](const CurveRow& row) {
    spdlog::debug("update {} mean_reward {} MPC {}", row.update_index, row.mean_reward, row.mpc);
  };
  const TrainResult result = train(options, factory);

  std::ostringstream curve, validation;
  curve << format_curve_header() << '\n';
  validation << "update_index,validation_MPC\n";
  for (const auto& row : result.curve) {
    curve << format_curve_row(row) << '\n';
    validation << row.update_index << ','
               << (row.validation_mpc ? format_double(*row.validation_mpc) : std::string("nan")) << '\n';
  }
  write_text(dir / "learning_curve.csv", curve.str());
  write_text(dir / "validation.csv", validation.str());
  save_checkpoint(dir / "checkpoint.txt", result.best);
  save_checkpoint(dir / "checkpoint_final.txt", result.last);
  write_manifest(dir, "train", cfg, inputs,
                 {"checkpoint.txt", "checkpoint_final.txt", "learning_curve.csv", "validation.csv"});
  spdlog::info("train: {} updates, best checkpoint from update {}", result.curve.size(), result.best.update_index);
}

// --- eval / report ----------------------------------------------------------

std::string setting_label(ScenarioKind kind) {
  return kind == ScenarioKind::leader_replacement ? "Market Leader Replacement" : "Historical Participation";
}

std::string environment_label(EnvMode mode) {
  return mode == EnvMode::history_conditioned ? "History-Conditioned" : "Stateless";
}

std::string percent(double fraction) {
  if (std::isnan(fraction)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json row_to_json(const ReportRow& r) {
  json j;
  j["setting"] = r.setting;
  j["environment"] = r.environment;
  j["WR"] = r.win_ratio;
  if (std::isnan(r.mpc)) {
    j["MPC"] = nullptr;
  } else {
    j["MPC"] = r.mpc;
  }
  j["SumProfit"] = r.sum_profit;
  j["UB"] = r.upper_bound;
  return j;
}

ReportRow row_from_json(const json& j) {
  try {
    ReportRow r;
    r.setting = j.at("setting").get<std::string>();
    r.environment = j.at("environment").get<std::string>();
    r.win_ratio = j.at("WR").get<double>();
    r.mpc = j.at("MPC").is_null() ? std::nan("") : j.at("MPC").get<double>();
    r.sum_profit = j.at("SumProfit").get<double>();
    r.upper_bound = j.at("UB").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed report row: ") + e.what());
  }
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream o;
  o << "Setting,Environment,WR,MPC,SumProfit,UB\n";
  for (const auto& r : rows) {
    o << csv_field(r.setting) << ',' << csv_field(r.environment) << ',' << percent(r.win_ratio) << ','
      << percent(r.mpc) << ',' << fixed2(r.sum_profit) << ',' << fixed2(r.upper_bound) << '\n';
  }
  return o.str();
}

void write_report(const fs::path& dir, const std::vector<ReportRow>& rows, const json& scenarios) {
  json doc;
  doc["version"] = kVersion;
  doc["rows"] = json::array();
  for (const auto& r : rows) doc["rows"].push_back(row_to_json(r));
  doc["scenarios"] = scenarios;
  write_text(dir / "report.csv", report_csv(rows));
  write_json(dir / "report.json", doc);
}

ReportRow aggregate(const std::vector<ReportRow>& runs, const std::string& label, bool spread) {
  const double n = static_cast<double>(runs.size());
  auto stat = [&](auto field) {
    double mean = 0.0;
    for (const auto& r : runs) mean += field(r);
    mean /= n;
    if (!spread) return mean;
    if (runs.size() < 2) return 0.0;
    double ss = 0.0;
    for (const auto& r : runs) ss += (field(r) - mean) * (field(r) - mean);
    return std::sqrt(ss / (n - 1.0));
  };
  ReportRow out = runs.front();
  out.environment = label;
  out.win_ratio = stat([](const ReportRow& r) { return r.win_ratio; });
  out.mpc = stat([](const ReportRow& r) { return r.mpc; });
  out.sum_profit = stat([](const ReportRow& r) { return r.sum_profit; });
  out.upper_bound = stat([](const ReportRow& r) { return r.upper_bound; });
  return out;
}

void write_cumulative(const fs::path& path, const ScenarioStream& stream, const EvalResult& agent,
                      const EvalResult* incumbent) {
  std::ostringstream o;
  o << "auction_index,opp_id,agent,upper_bound";
  if (incumbent) o << ",incumbent";
  o << '\n';
  double a = 0.0, ub = 0.0, inc = 0.0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    a += agent.tally.profits[i];
    ub += agent.tally.counterfactual_max[i];
    o << i << ',' << stream.records[i].opportunity.id << ',' << format_double(a) << ',' << format_double(ub);
    if (incumbent) {
      inc += incumbent->tally.profits[i];
      o << ',' << format_double(inc);
    }
    o << '\n';
  }
  write_text(path, o.str());
}

void cmd_eval(RunConfig& cfg, bool config_given) {
  require_file(cfg.checkpoint_path, "checkpoint");
  const Checkpoint ckpt = load_checkpoint(fs::path(cfg.checkpoint_path));
  if (config_given) {
    const std::string diff = describe_env_mismatch(ckpt.env, cfg.env);
    if (!diff.empty()) throw ConfigError("checkpoint environment does not match config: " + diff);
  }
  const auto test = read_log(cfg.test_path, "test log");
  if (test.empty()) throw InvalidInput("test log has no auctions: " + cfg.test_path);
  std::vector<AuctionRecord> train;
  if (!cfg.train_path.empty()) train = read_log(cfg.train_path, "training log");
  const auto& reference = train.empty() ? test : train;
  const RouteFrequency freq(reference);
  const fs::path dir = prepare_out_dir(cfg);
  auto policy = std::make_shared<const ActorCritic>(ckpt.policy);
  const std::string env_name = environment_label(ckpt.env.mode);

  std::vector<ReportRow> rows;
  json scenarios = json::array();
  json outputs = {"report.csv", "report.json"};
  for (ScenarioKind kind : cfg.eval_scenarios) {
    SearcherId leader;
    if (kind == ScenarioKind::leader_replacement) leader = resolve_leader(cfg, reference);
    const ScenarioStream stream = build_scenario(kind, test, freq, leader, cfg.window_ms);
    json info;
    info["scenario"] = to_string(kind);
    info["auctions"] = stream.size();
    if (stream.leader_id) info["leader"] = *stream.leader_id;
    info["warnings"] = stream.warnings;
    scenarios.push_back(info);
    if (stream.empty()) {
      spdlog::warn("eval: scenario {} is empty, no rows written", to_string(kind));
      continue;
    }
    const std::string setting = setting_label(kind);

    std::optional<EvalResult> incumbent;
    if (kind == ScenarioKind::leader_replacement) {
      incumbent = evaluate(incumbent_bidder(), stream, ckpt.env, cfg.seed);
      incumbent->row.setting = setting;
      incumbent->row.environment = "Incumbent (" + leader + ")";
      rows.push_back(incumbent->row);
    }

    EvalResult agent = evaluate(deterministic_bidder(policy), stream, ckpt.env, cfg.seed);
    if (cfg.stochastic_eval) {
      std::vector<ReportRow> runs;
      for (std::size_t s = 0; s < cfg.eval_seeds; ++s) {
        const std::uint64_t seed = cfg.seed + s;
        EvalResult r = evaluate(stochastic_bidder(policy, seed), stream, ckpt.env, seed);
        r.row.setting = setting;
        r.row.environment = env_name + " (seed " + std::to_string(seed) + ")";
        rows.push_back(r.row);
        runs.push_back(r.row);
      }
      const std::string n = std::to_string(runs.size());
      rows.push_back(aggregate(runs, env_name + " (mean of " + n + " seeds)", false));
      rows.push_back(aggregate(runs, env_name + " (std of " + n + " seeds)", true));
    } else {
      agent.row.setting = setting;
      agent.row.environment = env_name;
      rows.push_back(agent.row);
    }
    const std::string curve = "cumulative_profit_" + to_string(kind) + ".csv";
    write_cumulative(dir / curve, stream, agent, incumbent ? &*incumbent : nullptr);
    outputs.push_back(curve);
  }
  write_report(dir, rows, scenarios);
  write_manifest(dir, "eval", cfg,
                 {{"checkpoint", cfg.checkpoint_path}, {"test", cfg.test_path}, {"train", cfg.train_path}},
                 outputs);
}

void cmd_report(RunConfig& cfg, const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw InvalidInput("report needs at least one report.json");
  std::vector<ReportRow> rows;
  json scenarios = json::array();
  for (const auto& path : inputs) {
    require_file(path, "report");
    std::ifstream in(path);
    json doc;
    try {
      doc = json::parse(in);
      for (const auto& r : doc.at("rows")) rows.push_back(row_from_json(r));
      if (doc.contains("scenarios")) {
        for (const auto& s : doc.at("scenarios")) scenarios.push_back(s);
      }
    } catch (const json::exception& e) {
      throw InvalidInput(path + ": " + e.what());
    }
  }
  const fs::path dir = prepare_out_dir(cfg);
  write_report(dir, rows, scenarios);
  write_manifest(dir, "report", cfg, {{"reports", inputs}}, {"report.csv", "report.json"});
}

}  // namespace

std::vector<SearcherProfile> default_market_profiles() {
  auto make = [](std::string id, double p1, double p2, double p3, double latency, double a, double b) {
    SearcherProfile p;
    p.searcher_id = std::move(id);
    p.arrival_prob_by_complexity = {{1, p1}, {2, p2}, {3, p3}};
    p.latency_mean_ms = latency;
    p.bid_fraction = BidFractionDist::beta_law(a, b);
    return p;
  };
  return {
      make("searcher_a", 0.90, 0.80, 0.60, 60.0, 9.0, 11.0),
      make("searcher_b", 0.60, 0.50, 0.40, 40.0, 4.0, 6.0),
      make("searcher_c", 0.50, 0.50, 0.50, 180.0, 3.0, 7.0),
  };
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bidding agent for sealed-bid MEV auctions", "mevbid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Overrides g;
  app.add_option("--config", g.config_path, "INI run configuration");
  g.seed_opt = app.add_option("--seed", g.seed, "Master seed");
  g.out_opt = app.add_option("--out-dir", g.out_dir, "Output directory");
  g.stochastic_opt = app.add_flag("--stochastic-eval", g.stochastic_eval, "Sample actions during eval");
  g.workers_opt = app.add_option("--workers", g.workers, "Rollout workers")->check(CLI::PositiveNumber);

  std::string log_path, synth_output, train_path, test_path, checkpoint_path, leader, scenario;
  double min_mev = 0.0;
  std::size_t count = 0, updates = 0;
  std::vector<std::string> report_inputs;

  auto* ingest = app.add_subcommand("ingest", "Filter and split an auction log");
  ingest->fallthrough();
  auto* log_opt = ingest->add_option("--log", log_path, "Auction log (CSV or JSON lines)");
  auto* min_mev_opt = ingest->add_option("--min-mev", min_mev, "Absolute MEV floor instead of the quantile");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic auction log");
  synth->fallthrough();
  auto* count_opt = synth->add_option("--count", count, "Number of auctions")->check(CLI::PositiveNumber);
  synth->add_option("--output", synth_output, "Output path (default <out-dir>/auction_log.csv)");

  auto* train_cmd = app.add_subcommand("train", "Train a bidding policy with PPO");
  train_cmd->fallthrough();
  auto* train_opt = train_cmd->add_option("--train", train_path, "Training log (replay source)");
  auto* updates_opt = train_cmd->add_option("--updates", updates, "Override ppo.max_updates");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on the test scenarios");
  eval->fallthrough();
  auto* ckpt_opt = eval->add_option("--checkpoint", checkpoint_path, "Checkpoint file");
  auto* test_opt = eval->add_option("--test", test_path, "Test log");
  auto* eval_train_opt = eval->add_option("--train", train_path, "Training log (route frequency, leader)");
  auto* leader_opt = eval->add_option("--leader", leader, "Incumbent to replace");
  auto* scenario_opt = eval->add_option("--scenario", scenario,
                                        "historical_participation, leader_replacement or both");

  auto* report = app.add_subcommand("report", "Merge report.json files");
  report->fallthrough();
  report->add_option("inputs", report_inputs, "report.json files")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    RunConfig cfg;
    const bool config_given = !g.config_path.empty();
    if (config_given) cfg = load_run_config(g.config_path);
    if (g.seed_opt->count()) cfg.seed = g.seed;
    if (g.out_opt->count()) cfg.out_dir = g.out_dir;
    if (g.stochastic_opt->count()) cfg.stochastic_eval = g.stochastic_eval;
    if (g.workers_opt->count()) cfg.workers = g.workers;
    if (log_opt->count()) cfg.log_path = log_path;
    if (min_mev_opt->count()) cfg.preprocess.min_mev_value = min_mev;
    if (count_opt->count()) cfg.synth.count = count;
    if (train_opt->count() || eval_train_opt->count()) cfg.train_path = train_path;
    if (test_opt->count()) cfg.test_path = test_path;
    if (ckpt_opt->count()) cfg.checkpoint_path = checkpoint_path;
    if (leader_opt->count()) cfg.leader_id = leader;
    if (scenario_opt->count()) {
      if (scenario == "both") {
        cfg.eval_scenarios = {ScenarioKind::historical_participation, ScenarioKind::leader_replacement};
      } else {
        cfg.eval_scenarios = {scenario_kind_from_string(scenario)};
      }
    }
    cfg.validate();

    if (*ingest) {
      cmd_ingest(cfg);
    } else if (*synth) {
      cmd_synth(cfg, synth_output);
    } else if (*train_cmd) {
      cmd_train(cfg, updates_opt->count() ? std::optional<std::size_t>(updates) : std::nullopt);
    } else if (*eval) {
      cmd_eval(cfg, config_given);
    } else if (*report) {
      cmd_report(cfg, report_inputs);
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace mevbid
