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

#include "mevbid/actor_critic.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mevbid/auction_log.hpp"
#include "mevbid/errors.hpp"

namespace mevbid {

ActorCritic::ActorCritic(DenseNetwork net) : net_(std::move(net)) {
  if (net_.output_size() != kOutputs) throw InvalidInput("actor-critic network needs 3 outputs");
}

ActorCritic ActorCritic::create(std::size_t observation_size, const std::vector<std::size_t>& hidden,
                                RngStream& rng) {
  std::vector<std::size_t> sizes{observation_size};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(kOutputs);
  return ActorCritic(DenseNetwork::initialized(std::move(sizes), rng));
}

PolicyOutput ActorCritic::decode(std::span<const double> outputs) {
  if (outputs.size() != kOutputs) throw InvalidInput("actor-critic decode needs 3 outputs");
  return {beta_head(outputs[0], outputs[1]), outputs[2]};
}

PolicyOutput ActorCritic::evaluate(std::span<const double> observation) const {
  return decode(net_.predict(observation));
}

ActionSample ActorCritic::act(std::span<const double> observation, RngStream& rng) const {
  const PolicyOutput out = evaluate(observation);
  ActionSample s;
  s.shape = out.shape;
  s.value = out.value;
  s.action = beta_sample(out.shape.alpha, out.shape.beta, rng);
  s.log_prob = beta_log_prob(out.shape.alpha, out.shape.beta, s.action);
  return s;
}

double ActorCritic::mean_action(std::span<const double> observation) const {
  return evaluate(observation).shape.mean();
}

namespace {

void write_values(std::ostream& out, const char* tag, std::span<const double> values) {
  out << tag << ' ' << values.size() << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) throw InvalidInput("checkpoint truncated");
    return s;
  }

  // "tag rest..." -> rest
  std::string tagged(const std::string& tag) {
    std::string s = line();
    if (s.rfind(tag + ' ', 0) != 0 && s != tag) {
      throw InvalidInput("checkpoint: expected '" + tag + "', found '" + s + "'");
    }
    return s.size() > tag.size() ? s.substr(tag.size() + 1) : std::string();
  }

  double number(const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw InvalidInput("checkpoint: bad number '" + text + "'");
    }
    return v;
  }

  std::uint64_t integer(const std::string& text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw InvalidInput("checkpoint: bad integer '" + text + "'");
    }
    return v;
  }

  std::vector<double> values(const std::string& tag) {
    const auto n = integer(tagged(tag));
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(number(line()));
    return out;
  }

 private:
  std::istream& in_;
};

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& ck) {
  const auto& env = ck.env;
  out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
  out << "layers";
  for (auto s : ck.policy.network().layer_sizes()) out << ' ' << s;
  out << '\n';
  out << "env_mode " << to_string(env.mode) << '\n';
  out << "history " << env.history_window << ' ' << env.history_samples << ' ' << env.stats_window << '\n';
  out << "regime " << (env.regime.mode == InformationRegime::Mode::real_time ? "real_time" : "delayed") << ' '
      << env.regime.delay_auctions << '\n';
  out << "reward " << format_double(env.reward.epsilon) << ' ' << format_double(env.reward.lambda_loss) << ' '
      << format_double(env.reward.alpha_overbid) << '\n';
  out << "max_route_length " << format_double(env.max_route_length) << '\n';
  out << "vocabulary";
  for (const auto& p : env.protocol_vocabulary) out << ' ' << p;
  out << '\n';
  out << "update " << ck.update_index << '\n';
  write_values(out, "params", ck.policy.network().parameters());
  const auto& a = ck.optimizer;
  out << "adam " << a.step << ' ' << format_double(a.learning_rate) << ' ' << format_double(a.beta1) << ' '
      << format_double(a.beta2) << ' ' << format_double(a.epsilon) << '\n';
  write_values(out, "adam_m", a.first_moment);
  write_values(out, "adam_v", a.second_moment);
  out << "end\n";
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write checkpoint " + path.string());
  save_checkpoint(out, ck);
}

Checkpoint load_checkpoint(std::istream& in) {
  Reader r(in);
  const auto magic = words(r.line());
  if (magic.size() != 2 || magic[0] != kCheckpointMagic) throw InvalidInput("not a mevbid checkpoint");
  if (magic[1] != std::to_string(kCheckpointVersion)) {
    throw InvalidInput("checkpoint version " + magic[1] + " is not supported (expected " +
                       std::to_string(kCheckpointVersion) + ")");
  }
  Checkpoint ck;
  std::vector<std::size_t> sizes;
  for (const auto& w : words(r.tagged("layers"))) sizes.push_back(r.integer(w));
  ck.env.mode = env_mode_from_string(r.tagged("env_mode"));
  auto hist = words(r.tagged("history"));
  if (hist.size() != 3) throw InvalidInput("checkpoint: bad history line");
  ck.env.history_window = r.integer(hist[0]);
  ck.env.history_samples = r.integer(hist[1]);
  ck.env.stats_window = r.integer(hist[2]);
  auto regime = words(r.tagged("regime"));
  if (regime.size() != 2) throw InvalidInput("checkpoint: bad regime line");
  ck.env.regime.mode = regime[0] == "real_time" ? InformationRegime::Mode::real_time
                                                : InformationRegime::Mode::delayed;
  ck.env.regime.delay_auctions = r.integer(regime[1]);
  auto reward = words(r.tagged("reward"));
  if (reward.size() != 3) throw InvalidInput("checkpoint: bad reward line");
  ck.env.reward = {r.number(reward[0]), r.number(reward[1]), r.number(reward[2])};
  ck.env.max_route_length = r.number(r.tagged("max_route_length"));
  ck.env.protocol_vocabulary = words(r.tagged("vocabulary"));
  ck.update_index = r.integer(r.tagged("update"));

  DenseNetwork net(sizes);
  const auto params = r.values("params");
  if (params.size() != net.parameter_count()) throw InvalidInput("checkpoint: parameter count mismatch");
  std::copy(params.begin(), params.end(), net.parameters().begin());
  ck.policy = ActorCritic(std::move(net));

  auto adam = words(r.tagged("adam"));
  if (adam.size() != 5) throw InvalidInput("checkpoint: bad adam line");
  ck.optimizer.step = r.integer(adam[0]);
  ck.optimizer.learning_rate = r.number(adam[1]);
  ck.optimizer.beta1 = r.number(adam[2]);
  ck.optimizer.beta2 = r.number(adam[3]);
  ck.optimizer.epsilon = r.number(adam[4]);
  ck.optimizer.first_moment = r.values("adam_m");
  ck.optimizer.second_moment = r.values("adam_v");
  if (ck.optimizer.first_moment.size() != params.size() || ck.optimizer.second_moment.size() != params.size()) {
    throw InvalidInput("checkpoint: optimizer state does not match parameters");
  }
  r.tagged("end");
  ck.env.validate();
  if (ck.env.observation_size() != sizes.front()) {
    throw InvalidInput("checkpoint: network input does not match the observation layout");
  }
  return ck;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read checkpoint " + path.string());
  return load_checkpoint(in);
}

std::string describe_env_mismatch(const EnvConfig& a, const EnvConfig& b) {
  std::vector<std::string> diffs;
  if (a.mode != b.mode) diffs.push_back("mode");
  if (a.history_window != b.history_window) diffs.push_back("history_window");
  if (a.history_samples != b.history_samples) diffs.push_back("history_samples");
  if (a.stats_window != b.stats_window) diffs.push_back("stats_window");
  if (a.regime.mode != b.regime.mode || a.regime.delay_auctions != b.regime.delay_auctions) {
    diffs.push_back("disclosure");
  }
  if (a.protocol_vocabulary != b.protocol_vocabulary) diffs.push_back("vocabulary");
  if (a.max_route_length != b.max_route_length) diffs.push_back("max_route_length");
  std::string out;
  for (const auto& d : diffs) out += (out.empty() ? "" : ", ") + d;
  return out;
}

}  // namespace mevbid
