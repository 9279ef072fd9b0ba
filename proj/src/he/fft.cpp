// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/fft.hpp"

#include <bit>
#include <numbers>

#include "edls/error.hpp"
#include "edls/ring/modmath.hpp"

namespace edls::he {

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n < 2 || !std::has_single_bit(n))
    raise(Errc::invalid_params, "fft size must be a power of two >= 2");
  const int log_n = std::countr_zero(n);
  roots_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    roots_[k] = std::polar(1.0, angle);
  }
  rev_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    rev_[i] = ring::reverse_bits(static_cast<std::uint32_t>(i), log_n);
}

void FftPlan::core(std::vector<std::complex<double>>& a, bool invert) const {
  if (a.size() != n_) raise(Errc::invalid_params, "bad fft length");
  for (std::size_t i = 0; i < n_; ++i)
    if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t step = n_ / len;
    const std::size_t half = len / 2;
    for (std::size_t block = 0; block < n_; block += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = roots_[j * step];
        if (invert) w = std::conj(w);
        const std::complex<double> u = a[block + j];
        const std::complex<double> v = a[block + j + half] * w;
        a[block + j] = u + v;
        a[block + j + half] = u - v;
      }
    }
  }
  if (invert) {
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (auto& x : a) x *= inv_n;
  }
}

void FftPlan::eval(std::vector<std::complex<double>>& a) const {
  core(a, false);
}

void FftPlan::interp(std::vector<std::complex<double>>& a) const {
  core(a, true);
}

}  // namespace edls::he
