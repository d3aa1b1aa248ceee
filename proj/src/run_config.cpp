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


#include "mevbid/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mevbid/auction_log.hpp"
#include "mevbid/errors.hpp"

namespace mevbid {
namespace {

const std::string kProfilePrefix = "profile.";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// "key = value ; note": a ';' or '#' after whitespace starts a comment.
std::string strip_comment(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] == ';' || s[i] == '#') && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) return s.substr(0, i);
  }
  return s;
}

class Reader {
 public:
  Reader(std::string section, std::string key, std::string value)
      : where_("[" + std::move(section) + "] " + std::move(key)), text_(trim(strip_comment(trim(value)))) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(where_ + ": " + what + " (got '" + text_ + "')");
  }

  const std::string& text() const { return text_; }

  double real() const {
    double v = 0.0;
    const char* end = text_.data() + text_.size();
    auto [p, ec] = std::from_chars(text_.data(), end, v);
    if (ec != std::errc() || p != end || text_.empty()) fail("expected a number");
    return v;
  }

  std::uint64_t u64() const {
    std::uint64_t v = 0;
    const char* end = text_.data() + text_.size();
    auto [p, ec] = std::from_chars(text_.data(), end, v);
    if (ec != std::errc() || p != end || text_.empty()) fail("expected a non-negative integer");
    return v;
  }

  std::size_t size() const { return static_cast<std::size_t>(u64()); }

  bool flag() const {
    if (text_ == "true" || text_ == "1") return true;
    if (text_ == "false" || text_ == "0") return false;
    fail("expected true or false");
  }

  std::vector<std::string> list() const {
    std::vector<std::string> out;
    std::stringstream ss(text_);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail("empty list element");
      out.push_back(item);
    }
    return out;
  }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& item : list()) out.push_back(Reader("", "", item).size());
    return out;
  }

 private:
  std::string where_;
  std::string text_;
};

using KeyHandler = std::function<void(const Reader&)>;
using Section = std::map<std::string, KeyHandler>;

std::map<std::string, Section> section_table(RunConfig& c) {
  std::map<std::string, Section> t;
  t["run"] = {
      {"seed", [&](const Reader& r) { c.seed = r.u64(); }},
      {"out_dir", [&](const Reader& r) { c.out_dir = r.text(); }},
      {"workers", [&](const Reader& r) { c.workers = r.size(); }},
      {"stochastic_eval", [&](const Reader& r) { c.stochastic_eval = r.flag(); }},
      {"eval_seeds", [&](const Reader& r) { c.eval_seeds = r.size(); }},
  };
  t["data"] = {
      {"log", [&](const Reader& r) { c.log_path = r.text(); }},
      {"train", [&](const Reader& r) { c.train_path = r.text(); }},
      {"test", [&](const Reader& r) { c.test_path = r.text(); }},
      {"checkpoint", [&](const Reader& r) { c.checkpoint_path = r.text(); }},
  };
  t["ingest"] = {
      {"small_mev_quantile", [&](const Reader& r) { c.preprocess.small_mev_quantile = r.real(); }},
      {"min_mev_value", [&](const Reader& r) {
         if (r.text().empty() || r.text() == "none") {
           c.preprocess.min_mev_value.reset();
         } else {
           c.preprocess.min_mev_value = r.real();
         }
       }},
      {"require_winner", [&](const Reader& r) { c.preprocess.require_winner = r.flag(); }},
      {"train_ratio", [&](const Reader& r) { c.train_ratio = r.real(); }},
  };
  t["market"] = {
      {"window_ms", [&](const Reader& r) { c.window_ms = r.real(); }},
  };
  t["synth"] = {
      {"count", [&](const Reader& r) { c.synth.count = r.size(); }},
      {"start_block", [&](const Reader& r) { c.synth.start_block = r.u64(); }},
      {"opportunities_per_block", [&](const Reader& r) { c.synth.opportunities_per_block = r.size(); }},
      {"mev_log_mean", [&](const Reader& r) { c.synth.mev_log_mean = r.real(); }},
      {"mev_log_sigma", [&](const Reader& r) { c.synth.mev_log_sigma = r.real(); }},
      {"max_route_length", [&](const Reader& r) { c.synth.max_route_length = r.size(); }},
      {"protocols", [&](const Reader& r) { c.synth.protocols = r.list(); }},
  };
  t["env"] = {
      {"mode", [&](const Reader& r) {
         try {
           c.env.mode = env_mode_from_string(r.text());
         } catch (const std::invalid_argument& e) {
           r.fail(e.what());
         }
       }},
      {"history_window", [&](const Reader& r) { c.env.history_window = r.size(); }},
      {"history_samples", [&](const Reader& r) { c.env.history_samples = r.size(); }},
      {"stats_window", [&](const Reader& r) { c.env.stats_window = r.size(); }},
      {"disclosure", [&](const Reader& r) {
         if (r.text() == "real_time") {
           c.env.regime.mode = InformationRegime::Mode::real_time;
         } else if (r.text() == "delayed") {
           c.env.regime.mode = InformationRegime::Mode::delayed;
         } else {
           r.fail("expected real_time or delayed");
         }
       }},
      {"disclosure_delay", [&](const Reader& r) { c.env.regime.delay_auctions = r.size(); }},
      {"vocabulary", [&](const Reader& r) { c.env.protocol_vocabulary = r.list(); }},
      {"max_route_length", [&](const Reader& r) { c.env.max_route_length = r.real(); }},
  };
  t["reward"] = {
      {"epsilon", [&](const Reader& r) { c.env.reward.epsilon = r.real(); }},
      {"lambda_loss", [&](const Reader& r) { c.env.reward.lambda_loss = r.real(); }},
      {"alpha_overbid", [&](const Reader& r) { c.env.reward.alpha_overbid = r.real(); }},
  };
  t["ppo"] = {
      {"clip_ratio", [&](const Reader& r) { c.ppo.clip_ratio = r.real(); }},
      {"gae_lambda", [&](const Reader& r) { c.ppo.gae_lambda = r.real(); }},
      {"gamma", [&](const Reader& r) { c.ppo.gamma = r.real(); }},
      {"epochs_per_update", [&](const Reader& r) { c.ppo.epochs_per_update = r.size(); }},
      {"minibatch_size", [&](const Reader& r) { c.ppo.minibatch_size = r.size(); }},
      {"rollout_length", [&](const Reader& r) { c.ppo.rollout_length = r.size(); }},
      {"entropy_coef", [&](const Reader& r) { c.ppo.entropy_coef = r.real(); }},
      {"value_coef", [&](const Reader& r) { c.ppo.value_coef = r.real(); }},
      {"learning_rate", [&](const Reader& r) { c.ppo.learning_rate = r.real(); }},
      {"max_grad_norm", [&](const Reader& r) { c.ppo.max_grad_norm = r.real(); }},
      {"max_updates", [&](const Reader& r) { c.ppo.max_updates = r.size(); }},
      {"hidden", [&](const Reader& r) { c.ppo.hidden_sizes = r.sizes(); }},
  };
  t["train"] = {
      {"source", [&](const Reader& r) {
         if (r.text() == "replay") {
           c.train_source = TrainSource::replay;
         } else if (r.text() == "simulated") {
           c.train_source = TrainSource::simulated;
         } else {
           r.fail("expected replay or simulated");
         }
       }},
      {"scenario", [&](const Reader& r) {
         try {
           c.train_scenario = scenario_kind_from_string(r.text());
         } catch (const std::invalid_argument& e) {
           r.fail(e.what());
         }
       }},
      {"validation_fraction", [&](const Reader& r) { c.validation_fraction = r.real(); }},
      {"sim_opportunities", [&](const Reader& r) { c.sim_opportunities = r.size(); }},
      {"sim_validation_opportunities", [&](const Reader& r) { c.sim_validation_opportunities = r.size(); }},
  };
  t["eval"] = {
      {"scenarios", [&](const Reader& r) {
         c.eval_scenarios.clear();
         for (const auto& name : r.list()) {
           try {
             c.eval_scenarios.push_back(scenario_kind_from_string(name));
           } catch (const std::invalid_argument& e) {
             r.fail(e.what());
           }
         }
       }},
      {"leader", [&](const Reader& r) {
         if (r.text().empty()) {
           c.leader_id.reset();
         } else {
           c.leader_id = r.text();
         }
       }},
  };
  return t;
}

Section profile_table(SearcherProfile& p) {
  auto arrival = [&p](int bucket) {
    return [&p, bucket](const Reader& r) { p.arrival_prob_by_complexity[bucket] = r.real(); };
  };
  return {
      {"arrival_1", arrival(1)},
      {"arrival_2", arrival(2)},
      {"arrival_3", arrival(3)},
      {"latency_mean_ms", [&p](const Reader& r) { p.latency_mean_ms = r.real(); }},
  };
}

SearcherProfile parse_profile(const std::string& section, const std::string& id,
                              const boost::property_tree::ptree& keys) {
  SearcherProfile p;
  p.searcher_id = id;
  p.arrival_prob_by_complexity = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
  auto table = profile_table(p);
  std::map<std::string, double> bid;
  for (const auto& [key, node] : keys) {
    Reader r(section, key, node.data());
    if (auto it = table.find(key); it != table.end()) {
      it->second(r);
    } else if (key == "bid_alpha" || key == "bid_beta" || key == "bid_fixed" || key == "bid_mean" ||
               key == "bid_variance") {
      bid[key] = r.real();
    } else {
      throw ConfigError("[" + section + "] unknown key '" + key + "'");
    }
  }
  auto has = [&bid](const char* k) { return bid.count(k) > 0; };
  const std::string where = "[" + section + "] ";
  if (has("bid_fixed")) {
    if (bid.size() != 1) throw ConfigError(where + "bid_fixed cannot be combined with other bid keys");
    p.bid_fraction = BidFractionDist::fixed(bid["bid_fixed"]);
  } else if (has("bid_mean") || has("bid_variance")) {
    if (!has("bid_mean") || !has("bid_variance") || bid.size() != 2) {
      throw ConfigError(where + "bid_mean and bid_variance go together and alone");
    }
    try {
      p.bid_fraction = BidFractionDist::from_moments(bid["bid_mean"], bid["bid_variance"]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + e.what());
    }
  } else if (!bid.empty()) {
    if (!has("bid_alpha") || !has("bid_beta")) throw ConfigError(where + "bid_alpha needs bid_beta");
    p.bid_fraction = BidFractionDist::beta_law(bid["bid_alpha"], bid["bid_beta"]);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + e.what());
  }
  return p;
}

}  // namespace

void RunConfig::validate() const {
  if (workers < 1) throw ConfigError("[run] workers must be >= 1");
  if (eval_seeds < 1) throw ConfigError("[run] eval_seeds must be >= 1");
  if (!(preprocess.small_mev_quantile >= 0.0 && preprocess.small_mev_quantile < 1.0)) {
    throw ConfigError("[ingest] small_mev_quantile must be in [0, 1)");
  }
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) throw ConfigError("[ingest] train_ratio must be in (0, 1)");
  if (!(window_ms > 0.0)) throw ConfigError("[market] window_ms must be positive");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw ConfigError("[train] validation_fraction must be in [0, 1)");
  }
  if (sim_opportunities < 1) throw ConfigError("[train] sim_opportunities must be >= 1");
  if (eval_scenarios.empty()) throw ConfigError("[eval] scenarios is empty");
  std::set<SearcherId> ids;
  for (const auto& p : profiles) {
    if (!ids.insert(p.searcher_id).second) throw ConfigError("duplicate profile '" + p.searcher_id + "'");
  }
  try {
    synth.validate();
    env.validate();
    ppo.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_run_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig config;
  auto table = section_table(config);
  for (const auto& [section, keys] : tree) {
    if (!keys.data().empty()) {
      throw ConfigError("key '" + section + "' outside of any section");
    }
    if (section.rfind(kProfilePrefix, 0) == 0) {
      const std::string id = section.substr(kProfilePrefix.size());
      if (id.empty()) throw ConfigError("[" + section + "] empty profile id");
      config.profiles.push_back(parse_profile(section, id, keys));
      continue;
    }
    auto sec = table.find(section);
    if (sec == table.end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, node] : keys) {
      auto handler = sec->second.find(key);
      if (handler == sec->second.end()) {
        throw ConfigError("[" + section + "] unknown key '" + key + "'");
      }
      handler->second(Reader(section, key, node.data()));
    }
  }
  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path.string());
  return parse_run_config(in);
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::string join(const std::vector<std::size_t>& items) {
  std::vector<std::string> s;
  for (auto v : items) s.push_back(std::to_string(v));
  return join(s);
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string dump_run_config(const RunConfig& c) {
  std::ostringstream o;
  auto d = [](double v) { return format_double(v); };
  o << "[run]\n"
    << "seed = " << c.seed << "\n"
    << "out_dir = " << c.out_dir << "\n"
    << "workers = " << c.workers << "\n"
    << "stochastic_eval = " << boolean(c.stochastic_eval) << "\n"
    << "eval_seeds = " << c.eval_seeds << "\n\n";
  o << "[data]\n"
    << "log = " << c.log_path << "\n"
    << "train = " << c.train_path << "\n"
    << "test = " << c.test_path << "\n"
    << "checkpoint = " << c.checkpoint_path << "\n\n";
  o << "[ingest]\n"
    << "small_mev_quantile = " << d(c.preprocess.small_mev_quantile) << "\n"
    << "min_mev_value = " << (c.preprocess.min_mev_value ? d(*c.preprocess.min_mev_value) : "none") << "\n"
    << "require_winner = " << boolean(c.preprocess.require_winner) << "\n"
    << "train_ratio = " << d(c.train_ratio) << "\n\n";
  o << "[market]\n"
    << "window_ms = " << d(c.window_ms) << "\n\n";
  o << "[synth]\n"
    << "count = " << c.synth.count << "\n"
    << "start_block = " << c.synth.start_block << "\n"
    << "opportunities_per_block = " << c.synth.opportunities_per_block << "\n"
    << "mev_log_mean = " << d(c.synth.mev_log_mean) << "\n"
    << "mev_log_sigma = " << d(c.synth.mev_log_sigma) << "\n"
    << "max_route_length = " << c.synth.max_route_length << "\n"
    << "protocols = " << join(c.synth.protocols) << "\n\n";
  for (const auto& p : c.profiles) {
    o << "[profile." << p.searcher_id << "]\n";
    for (const auto& [bucket, prob] : p.arrival_prob_by_complexity) {
      o << "arrival_" << bucket << " = " << d(prob) << "\n";
    }
    o << "latency_mean_ms = " << d(p.latency_mean_ms) << "\n";
    if (p.bid_fraction.kind == BidFractionDist::Kind::fixed) {
      o << "bid_fixed = " << d(p.bid_fraction.value) << "\n\n";
    } else {
      o << "bid_alpha = " << d(p.bid_fraction.alpha) << "\n"
        << "bid_beta = " << d(p.bid_fraction.beta) << "\n\n";
    }
  }
  o << "[env]\n"
    << "mode = " << to_string(c.env.mode) << "\n"
    << "history_window = " << c.env.history_window << "\n"
    << "history_samples = " << c.env.history_samples << "\n"
    << "stats_window = " << c.env.stats_window << "\n"
    << "disclosure = " << (c.env.regime.mode == InformationRegime::Mode::real_time ? "real_time" : "delayed")
    << "\n"
    << "disclosure_delay = " << c.env.regime.delay_auctions << "\n"
    << "vocabulary = " << join(c.env.protocol_vocabulary) << "\n"
    << "max_route_length = " << d(c.env.max_route_length) << "\n\n";
  o << "[reward]\n"
    << "epsilon = " << d(c.env.reward.epsilon) << "\n"
    << "lambda_loss = " << d(c.env.reward.lambda_loss) << "\n"
    << "alpha_overbid = " << d(c.env.reward.alpha_overbid) << "\n\n";
  o << "[ppo]\n"
    << "clip_ratio = " << d(c.ppo.clip_ratio) << "\n"
    << "gae_lambda = " << d(c.ppo.gae_lambda) << "\n"
    << "gamma = " << d(c.ppo.gamma) << "\n"
    << "epochs_per_update = " << c.ppo.epochs_per_update << "\n"
    << "minibatch_size = " << c.ppo.minibatch_size << "\n"
    << "rollout_length = " << c.ppo.rollout_length << "\n"
    << "entropy_coef = " << d(c.ppo.entropy_coef) << "\n"
    << "value_coef = " << d(c.ppo.value_coef) << "\n"
    << "learning_rate = " << d(c.ppo.learning_rate) << "\n"
    << "max_grad_norm = " << d(c.ppo.max_grad_norm) << "\n"
    << "max_updates = " << c.ppo.max_updates << "\n"
    << "hidden = " << join(c.ppo.hidden_sizes) << "\n\n";
  std::vector<std::string> scenarios;
  for (auto k : c.eval_scenarios) scenarios.push_back(to_string(k));
  o << "[train]\n"
    << "source = " << (c.train_source == TrainSource::replay ? "replay" : "simulated") << "\n"
    << "scenario = " << to_string(c.train_scenario) << "\n"
    << "validation_fraction = " << d(c.validation_fraction) << "\n"
    << "sim_opportunities = " << c.sim_opportunities << "\n"
    << "sim_validation_opportunities = " << c.sim_validation_opportunities << "\n\n";
  o << "[eval]\n"
    << "scenarios = " << join(scenarios) << "\n"
    << "leader = " << c.leader_id.value_or("") << "\n";
  return o.str();
}

}  // namespace mevbid
