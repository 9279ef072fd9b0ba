// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_NN_GRAPH_HPP
#define EDLS_NN_GRAPH_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "edls/error.hpp"
#include "edls/he/backend.hpp"
#include "edls/nn/activation.hpp"

namespace edls::nn {

// One-dimensional convolution across the time axis of a window. Each
// timestep of the window is one ciphertext with the features in its slots;
// the convolution is a slot-wise weighted sum over the timesteps, so a
// kernel entry is either a scalar (broadcast over features) or a
// per-feature vector. The engine evaluates kernels spanning the full
// window (one output position, stride 1) — window geometry is fixed at
// wrangling time, not inside the graph.
struct Conv1dLayer {
  std::vector<std::vector<double>> kernel;  // [timestep][1 or n_features]
  std::vector<double> bias;                 // [1] or [n_features]
  std::size_t stride = 1;
  bool trainable = true;
};

struct ActivationLayer {
  ActivationKind kind = ActivationKind::sigmoid_approx;
};

// Slot-wise readout layer: slot f of the output is weight_f * input_f + bias.
// The scalar prediction is the sum of the first n_features slots, taken by
// the client after decryption (slot rotation is deliberately outside this
// engine's scope), so the bias contributes once per feature slot.
struct DenseLayer {
  std::vector<double> weight;  // [1 or n_features]
  double bias = 0.0;
  bool trainable = true;
};

using LayerSpec = std::variant<Conv1dLayer, ActivationLayer, DenseLayer>;

// Multiplicative levels one evaluation of the layer consumes.
int layer_depth(const LayerSpec& layer);
std::string layer_label(const LayerSpec& layer, std::size_t index);

struct ComputeGraph {
  std::string name = "model";
  std::size_t window_length = 0;  // timesteps per window
  std::size_t n_features = 0;     // live slots per timestep
  std::vector<LayerSpec> layers;

  int depth_budget() const;

  // Structural checks (shapes, ordering, geometry). Throws
  // Errc::model_format with the offending detail.
  void validate() const;
};

struct LevelTraceEntry {
  std::string node;
  int level = 0;
  double scale = 0.0;
};
using LevelTrace = std::vector<LevelTraceEntry>;

// Plaintext value the sentinel slot must carry at the output, given that
// every input timestep carried `sentinel_in` in that slot. The sentinel
// channel runs through feature-0 conv weights and bias, the activation,
// and the dense layer with a pass-through weight of 1 plus its bias.
double sentinel_forward(const ComputeGraph& graph, double sentinel_in);

namespace detail {

// Weight vector over all slots: features first, then (optionally) the
// sentinel channel mirroring the first weight; unused slots stay zero.
inline std::vector<double> spread_weights(const std::vector<double>& w,
                                          std::size_t n_features,
                                          std::size_t slot_count,
                                          std::optional<std::size_t> sentinel,
                                          double sentinel_weight) {
  std::vector<double> slots(slot_count, 0.0);
  for (std::size_t f = 0; f < n_features; ++f)
    slots[f] = w.size() == 1 ? w[0] : w[f];
  if (sentinel) slots[*sentinel] = sentinel_weight;
  return slots;
}

}  // namespace detail

// --- Layer evaluation over any backend ------------------------------------

template <he::EvalBackend B>
typename B::Ct conv1d_forward(const B& backend, const Conv1dLayer& layer,
                              std::span<const typename B::Ct> window,
                              std::size_t n_features,
                              std::optional<std::size_t> sentinel_slot) {
  if (window.empty() || window.size() != layer.kernel.size())
    raise(Errc::model_format, "window length does not match the kernel");
  const int level = backend.level(window[0]);
  if (level < 1)
    raise(Errc::out_of_levels, "convolution needs one level, none left");
  const double weight_scale = backend.prime(level);

  typename B::Ct acc{};
  bool have_acc = false;
  for (std::size_t t = 0; t < window.size(); ++t) {
    if (backend.level(window[t]) != level)
      raise(Errc::level_mismatch,
            "window timesteps sit at different levels; align levels first");
    const auto& k = layer.kernel[t];
    typename B::Pt w_pt =
        k.size() == 1 && !sentinel_slot
            ? backend.encode_const(k[0], weight_scale, level)
            : backend.encode_slots(
                  detail::spread_weights(k, n_features, backend.slot_count(),
                                         sentinel_slot, k[0]),
                  weight_scale, level);
    typename B::Ct term = backend.mul_plain(window[t], w_pt);
    if (!have_acc) {
      acc = std::move(term);
      have_acc = true;
    } else {
      acc = backend.add(acc, term);
    }
  }

  const double bias_scale = backend.scale(acc);
  const int bias_level = backend.level(acc);
  typename B::Pt b_pt =
      layer.bias.size() == 1
          ? backend.encode_const(layer.bias[0], bias_scale, bias_level)
          : backend.encode_slots(
                detail::spread_weights(layer.bias, n_features,
                                       backend.slot_count(), sentinel_slot,
                                       layer.bias[0]),
                bias_scale, bias_level);
  return backend.add_plain(acc, b_pt);
}

// Cubic sigmoid across all slots. Costs exactly three levels:
//   x^2 (1), x^3 from x^2 * x (1), coefficient products (1, shared by both
//   monomials; the linear branch rides down via modulus switching).
// The coefficient plaintext scales are chosen so the two branches meet at
// bit-identical scales and the constant term matches the sum's scale.
template <he::EvalBackend B>
typename B::Ct sigmoid_forward(const B& backend, const typename B::Ct& x) {
  const int l = backend.level(x);
  if (l < 3)
    raise(Errc::out_of_levels,
          "activation needs 3 levels, ciphertext has " + std::to_string(l));
  const double s = backend.scale(x);

  typename B::Ct x2 = backend.mul(x, x);                       // level l-1
  typename B::Ct x_down = backend.mod_switch_to(x, l - 1);
  typename B::Ct x3 = backend.mul(x2, x_down);                 // level l-2

  typename B::Ct cubic = backend.mul_plain(
      x3, backend.encode_const(kSigmoidCubic, backend.prime(l - 2), l - 2));

  const double linear_scale = s * s / backend.prime(l - 1);
  typename B::Ct linear = backend.mod_switch_to(
      backend.mul_plain(
          x, backend.encode_const(kSigmoidLinear, linear_scale, l)),
      l - 3);

  typename B::Ct sum = backend.add(cubic, linear);
  return backend.add_plain(
      sum,
      backend.encode_const(kSigmoidConst, backend.scale(sum), l - 3));
}

template <he::EvalBackend B>
typename B::Ct dense_forward(const B& backend, const DenseLayer& layer,
                             const typename B::Ct& input,
                             std::size_t n_features,
                             std::optional<std::size_t> sentinel_slot) {
  const int level = backend.level(input);
  if (level < 1)
    raise(Errc::out_of_levels, "dense layer needs one level, none left");
  typename B::Pt w_pt = backend.encode_slots(
      detail::spread_weights(layer.weight, n_features, backend.slot_count(),
                             sentinel_slot, 1.0),
      backend.prime(level), level);
  typename B::Ct out = backend.mul_plain(input, w_pt);
  typename B::Pt b_pt = backend.encode_const(
      layer.bias, backend.scale(out), backend.level(out));
  return backend.add_plain(out, b_pt);
}

// Whole-graph evaluation. `window` holds one ciphertext per timestep, all
// at the same level. Performs a depth precheck against the ciphertext level
// before touching the data, so exhaustion is reported with the node that
// would have failed rather than as a half-evaluated wreck.
template <he::EvalBackend B>
typename B::Ct forward(const ComputeGraph& graph, const B& backend,
                       std::span<const typename B::Ct> window,
                       std::optional<std::size_t> sentinel_slot = {},
                       LevelTrace* trace = nullptr) {
  graph.validate();
  if (window.size() != graph.window_length)
    raise(Errc::model_format, "window length does not match the graph");
  for (const auto& layer : graph.layers) {
    if (const auto* act = std::get_if<ActivationLayer>(&layer);
        act && act->kind == ActivationKind::sigmoid_true)
      raise(Errc::unsupported_on_encrypted,
            "sigmoid_true is not a polynomial; evaluation over ciphertext "
            "slots supports sigmoid_approx only");
  }

  int level_left = backend.level(window[0]);
  for (std::size_t i = 0; i < graph.layers.size(); ++i) {
    level_left -= layer_depth(graph.layers[i]);
    if (level_left < 0)
      raise(Errc::out_of_levels,
            "depth overflow at node " + layer_label(graph.layers[i], i) +
                ": the modulus chain is exhausted before it completes");
  }

  if (trace)
    trace->push_back({"input", backend.level(window[0]),
                      backend.scale(window[0])});
  typename B::Ct state{};
  bool consumed_window = false;
  for (std::size_t i = 0; i < graph.layers.size(); ++i) {
    const auto& layer = graph.layers[i];
    if (const auto* conv = std::get_if<Conv1dLayer>(&layer)) {
      state = conv1d_forward(backend, *conv, window, graph.n_features,
                             sentinel_slot);
      consumed_window = true;
    } else if (!consumed_window) {
      raise(Errc::model_format,
            "graph must consume the window with a convolution first");
    } else if (const auto* act = std::get_if<ActivationLayer>(&layer)) {
      (void)act;
      state = sigmoid_forward(backend, state);
    } else {
      const auto& dense = std::get<DenseLayer>(layer);
      state = dense_forward(backend, dense, state, graph.n_features,
                            sentinel_slot);
    }
    if (trace)
      trace->push_back({layer_label(layer, i), backend.level(state),
                        backend.scale(state)});
  }
  return state;
}

}  // namespace edls::nn

#endif  // EDLS_NN_GRAPH_HPP
