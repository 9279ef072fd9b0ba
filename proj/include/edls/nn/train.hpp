// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_NN_TRAIN_HPP
#define EDLS_NN_TRAIN_HPP

#include <vector>

#include "edls/nn/graph.hpp"

namespace edls::nn {

// Training operates on plaintext windows only — the encrypted path serves
// inference. A window is [timestep][feature]; the target is a scalar.
using Window = std::vector<std::vector<double>>;

// Intermediate values of one plaintext forward pass, kept for backprop.
struct ForwardCache {
  std::vector<double> pre_activation;   // z_f per feature
  std::vector<double> activated;        // a_f per feature
  double prediction = 0.0;
};

// Gradients in the same shapes as the layer parameters.
struct Gradients {
  std::vector<std::vector<double>> kernel;
  std::vector<double> conv_bias;
  std::vector<double> dense_weight;
  double dense_bias = 0.0;
};

// Plaintext forward through a conv-activation-dense graph. Unlike the
// encrypted path this honours sigmoid_true when the graph asks for it.
ForwardCache forward_plain(const ComputeGraph& graph, const Window& window);

double predict_plain(const ComputeGraph& graph, const Window& window);

// d(prediction)/d(parameters) scaled by upstream dL/dprediction.
Gradients backward(const ComputeGraph& graph, const Window& window,
                   const ForwardCache& cache, double upstream);

// In-place SGD step; layers marked non-trainable are left untouched.
void apply_gradients(ComputeGraph& graph, const Gradients& grads,
                     double learning_rate);

double mse(const ComputeGraph& graph, const std::vector<Window>& windows,
           const std::vector<double>& targets);

// Full-batch gradient descent. Returns the mean squared error measured at
// the start of every epoch plus one final entry after the last update, so
// curve[0] is the untouched model and curve.back() the trained one.
// Throws Errc::non_finite if the loss ever leaves the reals and
// Errc::training_state on shape mismatches.
std::vector<double> train(ComputeGraph& graph,
                          const std::vector<Window>& windows,
                          const std::vector<double>& targets,
                          std::size_t epochs, double learning_rate);

}  // namespace edls::nn

#endif  // EDLS_NN_TRAIN_HPP
