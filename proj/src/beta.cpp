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

#include "mevbid/beta.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <spdlog/spdlog.h>

#include "mevbid/errors.hpp"

namespace mevbid {
namespace {

double clamp_unit(double x) {
  if (x < kBetaEdge || x > 1.0 - kBetaEdge) {
    spdlog::warn("beta argument {} clamped into [{}, {}]", x, kBetaEdge, 1.0 - kBetaEdge);
    return std::clamp(x, kBetaEdge, 1.0 - kBetaEdge);
  }
  return x;
}

double log_beta_fn(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

void check_shape(double a, double b) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw NumericalError("invalid beta shape (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
}

}  // namespace

double softplus(double x) {
  // log1p(exp(x)) without overflow.
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

BetaShape beta_head(double raw_alpha, double raw_beta) {
  return {softplus(raw_alpha) + 1.0, softplus(raw_beta) + 1.0};
}

double beta_log_prob(double alpha, double beta, double x) {
  check_shape(alpha, beta);
  x = clamp_unit(x);
  return (alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x) - log_beta_fn(alpha, beta);
}

double beta_sample(double alpha, double beta, RngStream& rng) {
  check_shape(alpha, beta);
  return std::clamp(rng.beta(alpha, beta), kBetaEdge, 1.0 - kBetaEdge);
}

double beta_entropy(double alpha, double beta) {
  using boost::math::digamma;
  check_shape(alpha, beta);
  return log_beta_fn(alpha, beta) - (alpha - 1.0) * digamma(alpha) - (beta - 1.0) * digamma(beta) +
         (alpha + beta - 2.0) * digamma(alpha + beta);
}

ShapeGradient beta_log_prob_grad(double alpha, double beta, double x) {
  using boost::math::digamma;
  check_shape(alpha, beta);
  x = clamp_unit(x);
  const double psi_sum = digamma(alpha + beta);
  return {std::log(x) - digamma(alpha) + psi_sum, std::log1p(-x) - digamma(beta) + psi_sum};
}

ShapeGradient beta_entropy_grad(double alpha, double beta) {
  using boost::math::trigamma;
  check_shape(alpha, beta);
  const double tri_sum = (alpha + beta - 2.0) * trigamma(alpha + beta);
  return {-(alpha - 1.0) * trigamma(alpha) + tri_sum, -(beta - 1.0) * trigamma(beta) + tri_sum};
}

}  // namespace mevbid
