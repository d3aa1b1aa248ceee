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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mevbid {

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t step = 0;
  double learning_rate = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  AdamState() = default;
  AdamState(std::size_t parameter_count, double lr);

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

// Bias-corrected Adam update in place. Throws NumericalError on a
// non-finite gradient (parameters untouched) and InvalidInput on a shape
// mismatch.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

// Scales grads so their L2 norm is at most max_norm; returns the norm before
// scaling. max_norm <= 0 disables clipping.
double clip_grad_norm(std::span<double> grads, double max_norm);

}  // namespace mevbid
