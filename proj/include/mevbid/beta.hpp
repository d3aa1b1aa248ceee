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

// Beta policy head: raw network outputs map to shape parameters
// softplus(raw) + 1, which keeps the density unimodal with no endpoint
// spikes. Log-density, entropy and their shape derivatives are closed form.

#include "mevbid/rng.hpp"

namespace mevbid {

inline constexpr double kBetaEdge = 1e-6;

struct BetaShape {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha / (alpha + beta); }
};

struct ShapeGradient {
  double d_alpha = 0.0;
  double d_beta = 0.0;
};

double softplus(double x);
double sigmoid(double x);

// softplus(raw) + 1 for both parameters.
BetaShape beta_head(double raw_alpha, double raw_beta);

// x outside [kBetaEdge, 1 - kBetaEdge] is clamped with a warning.
double beta_log_prob(double alpha, double beta, double x);
// Two Gamma draws, result kept inside [kBetaEdge, 1 - kBetaEdge].
double beta_sample(double alpha, double beta, RngStream& rng);
double beta_entropy(double alpha, double beta);

ShapeGradient beta_log_prob_grad(double alpha, double beta, double x);
ShapeGradient beta_entropy_grad(double alpha, double beta);

}  // namespace mevbid
