// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/nn/graph.hpp"

namespace edls::nn {

int layer_depth(const LayerSpec& layer) {
  if (std::holds_alternative<Conv1dLayer>(layer)) return 1;
  if (std::holds_alternative<ActivationLayer>(layer)) return 3;
  return 1;  // dense
}

std::string layer_label(const LayerSpec& layer, std::size_t index) {
  const char* type = std::holds_alternative<Conv1dLayer>(layer) ? "conv1d"
                     : std::holds_alternative<ActivationLayer>(layer)
                         ? "activation"
                         : "dense";
  return std::string(type) + "[" + std::to_string(index) + "]";
}

int ComputeGraph::depth_budget() const {
  int depth = 0;
  for (const auto& layer : layers) depth += layer_depth(layer);
  return depth;
}

void ComputeGraph::validate() const {
  if (window_length == 0 || n_features == 0)
    raise(Errc::model_format, "window length and feature count must be set");
  if (layers.empty()) raise(Errc::model_format, "graph has no layers");
  std::size_t conv_count = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (const auto* conv = std::get_if<Conv1dLayer>(&layers[i])) {
      ++conv_count;
      if (i != 0)
        raise(Errc::model_format, "convolution must be the first layer");
      if (conv->kernel.size() != window_length)
        raise(Errc::model_format,
              "kernel length must equal the window length (single output "
              "position)");
      if (conv->stride != 1)
        raise(Errc::model_format, "only stride 1 is supported");
      for (const auto& k : conv->kernel)
        if (k.size() != 1 && k.size() != n_features)
          raise(Errc::model_format,
                "kernel entries must be scalars or per-feature vectors");
      if (conv->bias.size() != 1 && conv->bias.size() != n_features)
        raise(Errc::model_format,
              "conv bias must be a scalar or a per-feature vector");
    } else if (const auto* dense = std::get_if<DenseLayer>(&layers[i])) {
      if (dense->weight.size() != 1 && dense->weight.size() != n_features)
        raise(Errc::model_format,
              "dense weight must be a scalar or a per-feature vector");
    }
  }
  if (conv_count != 1)
    raise(Errc::model_format, "graph needs exactly one convolution layer");
}

double sentinel_forward(const ComputeGraph& graph, double sentinel_in) {
  double value = sentinel_in;
  for (const auto& layer : graph.layers) {
    if (const auto* conv = std::get_if<Conv1dLayer>(&layer)) {
      double acc = 0.0;
      for (const auto& k : conv->kernel) acc += k[0] * value;
      value = acc + conv->bias[0];
    } else if (const auto* act = std::get_if<ActivationLayer>(&layer)) {
      // The encrypted path only ever evaluates the polynomial.
      (void)act;
      value = sigmoid_approx(value);
    } else {
      // Pass-through weight so the sentinel survives a model whose dense
      // weights shrink toward zero; the broadcast bias reaches every slot.
      const auto& dense = std::get<DenseLayer>(layer);
      value = 1.0 * value + dense.bias;
    }
  }
  return value;
}

}  // namespace edls::nn
