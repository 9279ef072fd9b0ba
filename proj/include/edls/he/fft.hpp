// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_FFT_HPP
#define EDLS_HE_FFT_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace edls::he {

// Plain complex FFT used by the slot encoder. Roots are tabulated directly
// from polar form (no incremental twiddle products), keeping the transform
// error near machine precision even at large sizes — that matters because
// encoding rounds coefficients that can be ~2^40 in magnitude.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // In-place a_j <- sum_k a_k w^{jk}, w = exp(2*pi*i/n).
  void eval(std::vector<std::complex<double>>& a) const;

  // Inverse of eval: a_k <- (1/n) sum_j a_j w^{-jk}.
  void interp(std::vector<std::complex<double>>& a) const;

 private:
  void core(std::vector<std::complex<double>>& a, bool invert) const;

  std::size_t n_;
  std::vector<std::complex<double>> roots_;
  std::vector<std::uint32_t> rev_;
};

}  // namespace edls::he

#endif  // EDLS_HE_FFT_HPP
