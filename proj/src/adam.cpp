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

#include "mevbid/adam.hpp"

#include <cmath>
#include <string>

#include "mevbid/errors.hpp"

namespace mevbid {

AdamState::AdamState(std::size_t parameter_count, double lr)
    : first_moment(parameter_count, 0.0), second_moment(parameter_count, 0.0), learning_rate(lr) {}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
  if (params.size() != grads.size() || state.first_moment.size() != params.size() ||
      state.second_moment.size() != params.size()) {
    throw InvalidInput("adam_step: parameter, gradient and moment sizes differ");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw NumericalError("adam_step: non-finite gradient at parameter " + std::to_string(i));
    }
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = state.beta1 * m + (1.0 - state.beta1) * grads[i];
    v = state.beta2 * v + (1.0 - state.beta2) * grads[i] * grads[i];
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

double clip_grad_norm(std::span<double> grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (double& g : grads) g *= scale;
  }
  return norm;
}

}  // namespace mevbid
