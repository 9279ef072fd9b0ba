// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_ENCODER_HPP
#define EDLS_HE_ENCODER_HPP

#include <memory>
#include <span>
#include <vector>

#include "edls/he/ciphertext.hpp"
#include "edls/he/context.hpp"
#include "edls/he/fft.hpp"

namespace edls::he {

// Packs real vectors into ring polynomials through the canonical embedding:
// slot j of a plaintext is the polynomial evaluated at the odd root
// zeta^(2j+1), zeta = exp(i*pi/N). A degree-N ring element therefore carries
// N/2 independent real slots, and ring addition/multiplication act on slots
// elementwise. Vectors shorter than the slot count are padded with zeros
// before encryption ever sees them.
class Encoder {
 public:
  explicit Encoder(std::shared_ptr<const Context> ctx);

  std::size_t slot_count() const { return ctx_->slot_count(); }

  // Scales values by `scale`, rounds to an integer polynomial and reduces
  // into the chain segment 0..level. Throws Errc::encoding_overflow when a
  // rounded coefficient leaves the representable range and Errc::non_finite
  // on NaN/infinity inputs.
  Plaintext encode(std::span<const double> values, double scale,
                   int level) const;

  // Constant vectors embed as a degree-0 polynomial; skips the transform.
  Plaintext encode_const(double value, double scale, int level) const;

  // Inverse of encode; returns all N/2 slots. Uses the base-prime residues,
  // which determine the coefficients exactly while |coeff| < q_0/2 — the
  // scale discipline keeps messages far inside that range.
  std::vector<double> decode(const Plaintext& pt) const;

 private:
  void check_level_scale(double scale, int level) const;
  Plaintext reduce_coefficients(const std::vector<std::int64_t>& coeffs,
                                double scale, int level) const;

  std::shared_ptr<const Context> ctx_;
  FftPlan fft_;
  std::vector<std::complex<double>> zeta_;  // zeta^k, k in [0, N)
};

}  // namespace edls::he

#endif  // EDLS_HE_ENCODER_HPP
