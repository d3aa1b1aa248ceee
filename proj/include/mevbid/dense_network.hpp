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
#include <span>
#include <vector>

#include "mevbid/rng.hpp"

namespace mevbid {

// Activations recorded by DenseNetwork::forward; backward needs them.
struct ForwardPass {
  std::vector<std::vector<double>> activations;  // [0] is the input

  bool recorded() const { return !activations.empty(); }
  const std::vector<double>& output() const { return activations.back(); }
};

// Fully connected network with tanh hidden layers and a linear output layer.
// Parameters live in one flat vector; layer l stores its weights row-major
// (out x in) followed by its biases.
class DenseNetwork {
 public:
  DenseNetwork() = default;
  // All parameters zero. Throws InvalidInput for fewer than two layers or a
  // zero-width layer.
  explicit DenseNetwork(std::vector<std::size_t> layer_sizes);

  // Scaled normal init: hidden weights ~ N(0, 1/fan_in), output weights
  // additionally scaled by output_gain; biases zero.
  static DenseNetwork initialized(std::vector<std::size_t> layer_sizes, RngStream& rng,
                                  double output_gain = 0.01);

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  std::size_t num_layers() const { return sizes_.size() - 1; }
  std::size_t input_size() const { return sizes_.front(); }
  std::size_t output_size() const { return sizes_.back(); }
  std::size_t parameter_count() const { return params_.size(); }

  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  double& weight(std::size_t layer, std::size_t out, std::size_t in);
  double& bias(std::size_t layer, std::size_t out);

  ForwardPass forward(std::span<const double> input) const;
  std::vector<double> predict(std::span<const double> input) const { return forward(input).output(); }

  // Adds d(output . grad_output)/d(params) into grad_params.
  void backward(const ForwardPass& pass, std::span<const double> grad_output,
                std::span<double> grad_params) const;
  std::vector<double> backward(const ForwardPass& pass, std::span<const double> grad_output) const;

  bool all_finite() const;

  friend bool operator==(const DenseNetwork&, const DenseNetwork&) = default;

 private:
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + sizes_[layer] * sizes_[layer + 1];
  }

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

}  // namespace mevbid
