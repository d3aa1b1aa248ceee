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

#include "mevbid/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mevbid/errors.hpp"

namespace mevbid {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix_seed(mix_seed(seed) ^ mix_seed(~stream_id))) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw InvalidInput("uniform_index over empty range");
  // Rejection sampling avoids modulo bias.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

bool RngStream::bernoulli(double p) {
  return uniform() < p;
}

double RngStream::exponential(double mean) {
  return -mean * std::log(uniform_open());
}

double RngStream::normal() {
  // Marsaglia polar method; the spare value is discarded so the stream
  // position depends only on the number of calls.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidInput("gamma shape must be positive");
  if (shape < 1.0) {
    // Boost to shape + 1 and rescale (Marsaglia-Tsang).
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

RngStream RngStream::fork(std::uint64_t child_id) const {
  return RngStream(mix_seed(seed_ ^ mix_seed(stream_id_)), child_id);
}

}  // namespace mevbid
