// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/nn/activation.hpp"

#include <cmath>

#include "edls/error.hpp"

namespace edls::nn {

const char* activation_name(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::sigmoid_true:
      return "sigmoid_true";
    case ActivationKind::sigmoid_approx:
      return "sigmoid_approx";
  }
  return "unknown";
}

ActivationKind activation_from_name(const std::string& name) {
  if (name == "sigmoid_true") return ActivationKind::sigmoid_true;
  if (name == "sigmoid_approx") return ActivationKind::sigmoid_approx;
  raise(Errc::model_format, "unknown activation: " + name);
}

double sigmoid_true(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double sigmoid_approx(double x) {
  return kSigmoidConst + kSigmoidLinear * x + kSigmoidCubic * x * x * x;
}

double activation_value(ActivationKind kind, double x) {
  return kind == ActivationKind::sigmoid_true ? sigmoid_true(x)
                                              : sigmoid_approx(x);
}

double activation_derivative(ActivationKind kind, double x) {
  if (kind == ActivationKind::sigmoid_true) {
    const double s = sigmoid_true(x);
    return s * (1.0 - s);
  }
  return kSigmoidLinear + 3.0 * kSigmoidCubic * x * x;
}

}  // namespace edls::nn
