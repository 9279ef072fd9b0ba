// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/nn/train.hpp"

#include <cmath>

namespace edls::nn {

namespace {

struct GraphRefs {
  const Conv1dLayer* conv;
  const ActivationLayer* act;
  const DenseLayer* dense;
};

GraphRefs trainable_shape(const ComputeGraph& graph) {
  graph.validate();
  if (graph.layers.size() != 3)
    raise(Errc::training_state,
          "training supports convolution-activation-dense graphs");
  const auto* conv = std::get_if<Conv1dLayer>(&graph.layers[0]);
  const auto* act = std::get_if<ActivationLayer>(&graph.layers[1]);
  const auto* dense = std::get_if<DenseLayer>(&graph.layers[2]);
  if (!conv || !act || !dense)
    raise(Errc::training_state,
          "training supports convolution-activation-dense graphs");
  return {conv, act, dense};
}

void check_window(const ComputeGraph& graph, const Window& window) {
  if (window.size() != graph.window_length)
    raise(Errc::training_state, "window length does not match the graph");
  for (const auto& row : window)
    if (row.size() != graph.n_features)
      raise(Errc::training_state, "feature count does not match the graph");
}

double kernel_at(const Conv1dLayer& conv, std::size_t t, std::size_t f) {
  const auto& k = conv.kernel[t];
  return k.size() == 1 ? k[0] : k[f];
}

double bias_at(const Conv1dLayer& conv, std::size_t f) {
  return conv.bias.size() == 1 ? conv.bias[0] : conv.bias[f];
}

double weight_at(const DenseLayer& dense, std::size_t f) {
  return dense.weight.size() == 1 ? dense.weight[0] : dense.weight[f];
}

}  // namespace

ForwardCache forward_plain(const ComputeGraph& graph, const Window& window) {
  const GraphRefs g = trainable_shape(graph);
  check_window(graph, window);
  const std::size_t features = graph.n_features;
  ForwardCache cache;
  cache.pre_activation.resize(features);
  cache.activated.resize(features);
  // The dense layer is slot-wise (w_f * a_f + b per slot) and the client
  // sums the feature slots after decryption, so the prediction accumulates
  // the bias once per feature. This mirrors the encrypted path exactly.
  double prediction = 0.0;
  for (std::size_t f = 0; f < features; ++f) {
    double z = bias_at(*g.conv, f);
    for (std::size_t t = 0; t < graph.window_length; ++t)
      z += kernel_at(*g.conv, t, f) * window[t][f];
    cache.pre_activation[f] = z;
    cache.activated[f] = activation_value(g.act->kind, z);
    prediction += weight_at(*g.dense, f) * cache.activated[f] +
                  g.dense->bias;
  }
  cache.prediction = prediction;
  return cache;
}

double predict_plain(const ComputeGraph& graph, const Window& window) {
  return forward_plain(graph, window).prediction;
}

Gradients backward(const ComputeGraph& graph, const Window& window,
                   const ForwardCache& cache, double upstream) {
  const GraphRefs g = trainable_shape(graph);
  check_window(graph, window);
  const std::size_t features = graph.n_features;

  Gradients grads;
  grads.kernel.resize(graph.window_length);
  for (std::size_t t = 0; t < graph.window_length; ++t)
    grads.kernel[t].assign(g.conv->kernel[t].size(), 0.0);
  grads.conv_bias.assign(g.conv->bias.size(), 0.0);
  grads.dense_weight.assign(g.dense->weight.size(), 0.0);
  // The bias feeds every feature slot of the client-side sum.
  grads.dense_bias = upstream * static_cast<double>(features);

  for (std::size_t f = 0; f < features; ++f) {
    const double a = cache.activated[f];
    if (g.dense->weight.size() == 1)
      grads.dense_weight[0] += upstream * a;
    else
      grads.dense_weight[f] = upstream * a;

    const double da = upstream * weight_at(*g.dense, f);
    const double dz =
        da * activation_derivative(g.act->kind, cache.pre_activation[f]);
    if (g.conv->bias.size() == 1)
      grads.conv_bias[0] += dz;
    else
      grads.conv_bias[f] = dz;
    for (std::size_t t = 0; t < graph.window_length; ++t) {
      if (g.conv->kernel[t].size() == 1)
        grads.kernel[t][0] += dz * window[t][f];
      else
        grads.kernel[t][f] = dz * window[t][f];
    }
  }
  return grads;
}

void apply_gradients(ComputeGraph& graph, const Gradients& grads,
                     double learning_rate) {
  trainable_shape(graph);
  auto& conv = std::get<Conv1dLayer>(graph.layers[0]);
  auto& dense = std::get<DenseLayer>(graph.layers[2]);
  if (conv.trainable) {
    for (std::size_t t = 0; t < conv.kernel.size(); ++t)
      for (std::size_t i = 0; i < conv.kernel[t].size(); ++i)
        conv.kernel[t][i] -= learning_rate * grads.kernel[t][i];
    for (std::size_t i = 0; i < conv.bias.size(); ++i)
      conv.bias[i] -= learning_rate * grads.conv_bias[i];
  }
  if (dense.trainable) {
    for (std::size_t i = 0; i < dense.weight.size(); ++i)
      dense.weight[i] -= learning_rate * grads.dense_weight[i];
    dense.bias -= learning_rate * grads.dense_bias;
  }
}

double mse(const ComputeGraph& graph, const std::vector<Window>& windows,
           const std::vector<double>& targets) {
  if (windows.size() != targets.size() || windows.empty())
    raise(Errc::training_state, "windows and targets must pair up");
  double acc = 0.0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const double err = predict_plain(graph, windows[i]) - targets[i];
    acc += err * err;
  }
  const double value = acc / static_cast<double>(windows.size());
  if (!std::isfinite(value)) raise(Errc::non_finite, "loss left the reals");
  return value;
}

std::vector<double> train(ComputeGraph& graph,
                          const std::vector<Window>& windows,
                          const std::vector<double>& targets,
                          std::size_t epochs, double learning_rate) {
  if (windows.size() != targets.size() || windows.empty())
    raise(Errc::training_state, "windows and targets must pair up");
  if (!(learning_rate > 0) || !std::isfinite(learning_rate))
    raise(Errc::training_state, "learning rate must be finite and positive");
  const double inv_count = 1.0 / static_cast<double>(windows.size());

  std::vector<double> curve;
  curve.reserve(epochs + 1);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    curve.push_back(mse(graph, windows, targets));
    // Full-batch gradient: deterministic, no sample-order effects.
    Gradients total;
    bool first = true;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const ForwardCache cache = forward_plain(graph, windows[i]);
      const double upstream =
          2.0 * (cache.prediction - targets[i]) * inv_count;
      Gradients g = backward(graph, windows[i], cache, upstream);
      if (first) {
        total = std::move(g);
        first = false;
        continue;
      }
      for (std::size_t t = 0; t < total.kernel.size(); ++t)
        for (std::size_t k = 0; k < total.kernel[t].size(); ++k)
          total.kernel[t][k] += g.kernel[t][k];
      for (std::size_t k = 0; k < total.conv_bias.size(); ++k)
        total.conv_bias[k] += g.conv_bias[k];
      for (std::size_t k = 0; k < total.dense_weight.size(); ++k)
        total.dense_weight[k] += g.dense_weight[k];
      total.dense_bias += g.dense_bias;
    }
    apply_gradients(graph, total, learning_rate);
  }
  curve.push_back(mse(graph, windows, targets));
  return curve;
}

}  // namespace edls::nn
