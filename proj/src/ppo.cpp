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

#include "mevbid/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mevbid/errors.hpp"

namespace mevbid {

void PPOConfig::validate() const {
  if (!(clip_ratio > 0.0 && clip_ratio < 1.0)) throw ConfigError("clip_ratio must lie in (0,1)");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0,1]");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) throw ConfigError("gae_lambda must lie in [0,1]");
  if (epochs_per_update == 0 || minibatch_size == 0 || rollout_length == 0) {
    throw ConfigError("epochs, minibatch size and rollout length must be positive");
  }
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(entropy_coef >= 0.0 && value_coef >= 0.0)) throw ConfigError("loss coefficients must be >= 0");
  if (workers == 0) throw ConfigError("workers must be >= 1");
  if (hidden_sizes.empty()) throw ConfigError("at least one hidden layer is required");
}

void Trajectory::append(const Trajectory& other) {
  observations.insert(observations.end(), other.observations.begin(), other.observations.end());
  actions.insert(actions.end(), other.actions.begin(), other.actions.end());
  log_probs.insert(log_probs.end(), other.log_probs.begin(), other.log_probs.end());
  rewards.insert(rewards.end(), other.rewards.begin(), other.rewards.end());
  values.insert(values.end(), other.values.begin(), other.values.end());
  dones.insert(dones.end(), other.dones.begin(), other.dones.end());
  infos.insert(infos.end(), other.infos.begin(), other.infos.end());
  bootstrap_value = other.bootstrap_value;
}

Trajectory collect_rollout(const ActorCritic& policy, BiddingEnv& env, std::size_t length, RngStream& rng) {
  if (env.done()) throw StateError("collect_rollout on an exhausted environment");
  Trajectory traj;
  for (std::size_t i = 0; i < length && !env.done(); ++i) {
    const Observation obs = env.observation();
    const ActionSample sample = policy.act(obs, rng);
    StepResult step = env.step(sample.action);
    traj.observations.push_back(obs);
    traj.actions.push_back(sample.action);
    traj.log_probs.push_back(sample.log_prob);
    traj.values.push_back(sample.value);
    traj.rewards.push_back(step.reward);
    traj.dones.push_back(step.done);
    traj.infos.push_back(step.info);
  }
  traj.bootstrap_value = env.done() ? 0.0 : policy.evaluate(env.observation()).value;
  return traj;
}

GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      const std::vector<bool>& dones, double gamma, double lambda, double bootstrap_value) {
  const std::size_t n = rewards.size();
  if (values.size() != n || dones.size() != n) throw InvalidInput("compute_gae: array lengths differ");
  GaeResult out;
  out.advantages.assign(n, 0.0);
  out.returns.assign(n, 0.0);
  double next_adv = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double next_value = t + 1 == n ? bootstrap_value : values[t + 1];
    const double live = dones[t] ? 0.0 : 1.0;
    const double delta = rewards[t] + gamma * next_value * live - values[t];
    next_adv = delta + gamma * lambda * live * next_adv;
    out.advantages[t] = next_adv;
    out.returns[t] = next_adv + values[t];
  }
  return out;
}

RolloutBatch make_batch(const std::vector<Trajectory>& segments, double gamma, double lambda) {
  RolloutBatch batch;
  for (const auto& seg : segments) {
    auto gae = compute_gae(seg.rewards, seg.values, seg.dones, gamma, lambda, seg.bootstrap_value);
    batch.trajectory.append(seg);
    batch.advantages.insert(batch.advantages.end(), gae.advantages.begin(), gae.advantages.end());
    batch.returns.insert(batch.returns.end(), gae.returns.begin(), gae.returns.end());
  }
  return batch;
}

std::vector<double> normalize_advantages(std::span<const double> advantages) {
  std::vector<double> out(advantages.size(), 0.0);
  if (advantages.empty()) return out;
  const double n = static_cast<double>(advantages.size());
  const double mean = std::accumulate(advantages.begin(), advantages.end(), 0.0) / n;
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  const double std_dev = std::sqrt(var / n);
  if (std_dev < 1e-8) return out;
  for (std::size_t i = 0; i < advantages.size(); ++i) out[i] = (advantages[i] - mean) / std_dev;
  return out;
}

LossBreakdown minibatch_loss(const ActorCritic& policy, const RolloutBatch& batch,
                             std::span<const double> normalized_advantages,
                             std::span<const std::size_t> indices, const PPOConfig& config,
                             std::span<double> grad) {
  LossBreakdown loss;
  if (indices.empty()) return loss;
  const double inv_n = 1.0 / static_cast<double>(indices.size());
  const auto& traj = batch.trajectory;
  const DenseNetwork& net = policy.network();
  const double lo = 1.0 - config.clip_ratio;
  const double hi = 1.0 + config.clip_ratio;

  for (std::size_t idx : indices) {
    const ForwardPass pass = net.forward(traj.observations[idx]);
    const std::vector<double>& raw = pass.output();
    const PolicyOutput out = ActorCritic::decode(raw);
    const double a = out.shape.alpha;
    const double b = out.shape.beta;
    const double x = traj.actions[idx];
    const double adv = normalized_advantages[idx];
    const double ret = batch.returns[idx];

    const double log_prob = beta_log_prob(a, b, x);
    const double log_ratio = log_prob - traj.log_probs[idx];
    const double ratio = std::exp(log_ratio);
    const double clipped = std::clamp(ratio, lo, hi);
    const double surrogate = std::min(ratio * adv, clipped * adv);
    const double entropy = beta_entropy(a, b);
    const double value_err = out.value - ret;

    loss.policy_loss += -surrogate * inv_n;
    loss.value_loss += value_err * value_err * inv_n;
    loss.entropy += entropy * inv_n;
    if (std::abs(ratio - 1.0) > config.clip_ratio) loss.clip_fraction += inv_n;
    loss.approx_kl += ((ratio - 1.0) - log_ratio) * inv_n;

    if (grad.empty()) continue;
    // The unclipped term carries the gradient unless the clip is binding.
    const bool clip_binding = (adv >= 0.0 && ratio > hi) || (adv < 0.0 && ratio < lo);
    const double d_log_prob = clip_binding ? 0.0 : -ratio * adv * inv_n;
    const double d_entropy = -config.entropy_coef * inv_n;
    const ShapeGradient glp = beta_log_prob_grad(a, b, x);
    const ShapeGradient gent = beta_entropy_grad(a, b);
    const double d_alpha = d_log_prob * glp.d_alpha + d_entropy * gent.d_alpha;
    const double d_beta = d_log_prob * glp.d_beta + d_entropy * gent.d_beta;
    const double grad_out[3] = {d_alpha * sigmoid(raw[0]), d_beta * sigmoid(raw[1]),
                                2.0 * config.value_coef * value_err * inv_n};
    net.backward(pass, grad_out, grad);
  }
  loss.total = loss.policy_loss + config.value_coef * loss.value_loss - config.entropy_coef * loss.entropy;
  return loss;
}

namespace {

std::string describe_minibatch(const RolloutBatch& batch, std::span<const double> adv,
                               std::span<const std::size_t> indices) {
  std::ostringstream os;
  os << "offending minibatch (index, action, old_log_prob, advantage, return):";
  for (std::size_t idx : indices) {
    os << "\n  " << idx << ", " << batch.trajectory.actions[idx] << ", " << batch.trajectory.log_probs[idx]
       << ", " << adv[idx] << ", " << batch.returns[idx];
  }
  return os.str();
}

}  // namespace

UpdateStats ppo_update(ActorCritic& policy, AdamState& optimizer, const RolloutBatch& batch,
                       const PPOConfig& config, RngStream& rng) {
  UpdateStats stats;
  const std::size_t n = batch.size();
  if (n == 0) return stats;
  const std::vector<double> adv = normalize_advantages(batch.advantages);
  std::vector<std::size_t> order(n);
  std::vector<double> grad(policy.network().parameter_count());

  for (std::size_t epoch = 0; epoch < config.epochs_per_update; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
    for (std::size_t start = 0; start < n; start += config.minibatch_size) {
      const std::size_t end = std::min(n, start + config.minibatch_size);
      std::span<const std::size_t> indices(order.data() + start, end - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      const LossBreakdown loss = minibatch_loss(policy, batch, adv, indices, config, grad);
      const bool finite_grad = std::all_of(grad.begin(), grad.end(), [](double g) { return std::isfinite(g); });
      if (!std::isfinite(loss.total) || !finite_grad) {
        throw NumericalError("non-finite PPO loss or gradient; " + describe_minibatch(batch, adv, indices));
      }
      clip_grad_norm(grad, config.max_grad_norm);
      adam_step(policy.network().parameters(), grad, optimizer);
      if (!policy.network().all_finite()) throw NumericalError("non-finite parameters after update");

      if (stats.minibatches == 0) stats.first_minibatch_clip_fraction = loss.clip_fraction;
      ++stats.minibatches;
      stats.policy_loss += loss.policy_loss;
      stats.value_loss += loss.value_loss;
      stats.entropy += loss.entropy;
      stats.clip_fraction += loss.clip_fraction;
      stats.approx_kl += loss.approx_kl;
    }
  }
  const double m = static_cast<double>(stats.minibatches);
  stats.policy_loss /= m;
  stats.value_loss /= m;
  stats.entropy /= m;
  stats.clip_fraction /= m;
  stats.approx_kl /= m;
  return stats;
}

}  // namespace mevbid
