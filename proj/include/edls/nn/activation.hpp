// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_NN_ACTIVATION_HPP
#define EDLS_NN_ACTIVATION_HPP

#include <string>

namespace edls::nn {

// Cubic least-squares fit of the logistic function on [-5, 5]:
//   sig(x) ~ 0.5 + 0.197 x - 0.004 x^3.
// Low degree keeps the encrypted evaluation at three multiplicative levels;
// the fit is monotone on (-4.05, 4.05) and its worst error on the fit range
// is ~0.051, reached near |x| = 3.83. Inputs are normalised to [0, 1]-ish
// ranges long before activation, so evaluation stays in the well-behaved
// middle of the interval.
inline constexpr double kSigmoidConst = 0.5;
inline constexpr double kSigmoidLinear = 0.197;
inline constexpr double kSigmoidCubic = -0.004;

enum class ActivationKind { sigmoid_true, sigmoid_approx };

const char* activation_name(ActivationKind kind);
ActivationKind activation_from_name(const std::string& name);

double sigmoid_true(double x);
double sigmoid_approx(double x);

double activation_value(ActivationKind kind, double x);

// d/dx of the activation actually applied in the forward pass — the
// training loop differentiates the polynomial when the polynomial is what
// ran, not the function it approximates.
double activation_derivative(ActivationKind kind, double x);

}  // namespace edls::nn

#endif  // EDLS_NN_ACTIVATION_HPP
