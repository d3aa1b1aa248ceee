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

#include "mevbid/dense_network.hpp"

#include <cmath>

#include "mevbid/errors.hpp"

namespace mevbid {

DenseNetwork::DenseNetwork(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw InvalidInput("a network needs at least an input and an output layer");
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] == 0 || sizes_[l + 1] == 0) throw InvalidInput("zero-width layer");
    offsets_.push_back(total);
    total += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

DenseNetwork DenseNetwork::initialized(std::vector<std::size_t> layer_sizes, RngStream& rng,
                                       double output_gain) {
  DenseNetwork net(std::move(layer_sizes));
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(net.sizes_[l])) *
                         (l + 1 == net.num_layers() ? output_gain : 1.0);
    double* w = net.params_.data() + net.weight_offset(l);
    for (std::size_t i = 0; i < net.sizes_[l] * net.sizes_[l + 1]; ++i) w[i] = scale * rng.normal();
  }
  return net;
}

double& DenseNetwork::weight(std::size_t layer, std::size_t out, std::size_t in) {
  return params_.at(weight_offset(layer) + out * sizes_.at(layer) + in);
}

double& DenseNetwork::bias(std::size_t layer, std::size_t out) {
  return params_.at(bias_offset(layer) + out);
}

ForwardPass DenseNetwork::forward(std::span<const double> input) const {
  if (input.size() != input_size()) {
    throw InvalidInput("network input has " + std::to_string(input.size()) + " values, expected " +
                       std::to_string(input_size()));
  }
  ForwardPass pass;
  pass.activations.reserve(sizes_.size());
  pass.activations.emplace_back(input.begin(), input.end());
  for (std::size_t l = 0; l < num_layers(); ++l) {
    const std::size_t n_in = sizes_[l];
    const std::size_t n_out = sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    const std::vector<double>& x = pass.activations.back();
    std::vector<double> y(n_out);
    const bool hidden = l + 1 < num_layers();
    for (std::size_t o = 0; o < n_out; ++o) {
      double acc = b[o];
      const double* row = w + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) acc += row[i] * x[i];
      y[o] = hidden ? std::tanh(acc) : acc;
    }
    pass.activations.push_back(std::move(y));
  }
  return pass;
}

void DenseNetwork::backward(const ForwardPass& pass, std::span<const double> grad_output,
                            std::span<double> grad_params) const {
  if (!pass.recorded() || pass.activations.size() != sizes_.size()) {
    throw StateError("backward called without a recorded forward pass of this network");
  }
  if (grad_output.size() != output_size()) throw InvalidInput("output gradient has the wrong size");
  if (grad_params.size() != params_.size()) throw InvalidInput("parameter gradient has the wrong size");

  std::vector<double> delta(grad_output.begin(), grad_output.end());
  for (std::size_t l = num_layers(); l-- > 0;) {
    const std::size_t n_in = sizes_[l];
    const std::size_t n_out = sizes_[l + 1];
    const std::vector<double>& x = pass.activations[l];
    const double* w = params_.data() + weight_offset(l);
    double* gw = grad_params.data() + weight_offset(l);
    double* gb = grad_params.data() + bias_offset(l);
    for (std::size_t o = 0; o < n_out; ++o) {
      const double d = delta[o];
      gb[o] += d;
      double* grow = gw + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) grow[i] += d * x[i];
    }
    if (l == 0) break;
    // x is the tanh output of layer l-1.
    std::vector<double> prev(n_in, 0.0);
    for (std::size_t o = 0; o < n_out; ++o) {
      const double d = delta[o];
      const double* row = w + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) prev[i] += row[i] * d;
    }
    for (std::size_t i = 0; i < n_in; ++i) prev[i] *= 1.0 - x[i] * x[i];
    delta = std::move(prev);
  }
}

std::vector<double> DenseNetwork::backward(const ForwardPass& pass, std::span<const double> grad_output) const {
  std::vector<double> grad(params_.size(), 0.0);
  backward(pass, grad_output, grad);
  return grad;
}

bool DenseNetwork::all_finite() const {
  for (double p : params_) {
    if (!std::isfinite(p)) return false;
  }
  return true;
}

}  // namespace mevbid
