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
#include <random>

namespace mevbid {

// Reproducible random stream identified by (seed, stream_id). The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// continuous samplers below are written out so that draws do not depend on
// the standard library's distribution implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p);
  double exponential(double mean);
  double normal();
  double gamma(double shape);
  double beta(double a, double b);

  // Child stream with a derived seed; used to hand independent streams to
  // rollout workers and episodes.
  RngStream fork(std::uint64_t child_id) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace mevbid
