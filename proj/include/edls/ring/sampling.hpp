// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_RING_SAMPLING_HPP
#define EDLS_RING_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "edls/ring/poly.hpp"
#include "edls/rng.hpp"

namespace edls::ring {

// Uniform element of R_q.
RingPoly sample_uniform(std::size_t degree, std::uint64_t q, SeededRng& rng);

// Ternary vector with i.i.d. coefficients from {-1, 0, 1}, each with
// probability 1/3. Returned as signed integers so one draw can be reduced
// into several prime moduli consistently (residue number system keys share
// a single underlying integer polynomial).
std::vector<std::int8_t> sample_ternary(std::size_t degree, SeededRng& rng);

// Discrete Gaussian on the integers via an exact cumulative table, tail-cut
// at floor(6*sigma). Deterministic for a fixed rng stream.
class GaussianSampler {
 public:
  explicit GaussianSampler(double sigma);

  std::int32_t sample(SeededRng& rng) const;
  std::vector<std::int32_t> sample_vector(std::size_t degree,
                                          SeededRng& rng) const;
  std::int32_t tail_bound() const { return tail_; }

 private:
  std::int32_t tail_;
  std::vector<std::uint64_t> cdf_;  // cdf_[k] = P[X <= k - tail_] * 2^64
};

// Reductions of small signed integer vectors into R_q (value v < 0 maps to
// q + v).
RingPoly reduce_to_ring(const std::vector<std::int8_t>& values,
                        std::uint64_t q);
RingPoly reduce_to_ring(const std::vector<std::int32_t>& values,
                        std::uint64_t q);

// Centered representative of x mod q in (-q/2, q/2], as a signed value.
inline std::int64_t center(std::uint64_t x, std::uint64_t q) {
  return x > q / 2 ? static_cast<std::int64_t>(x) - static_cast<std::int64_t>(q)
                   : static_cast<std::int64_t>(x);
}

}  // namespace edls::ring

#endif  // EDLS_RING_SAMPLING_HPP
