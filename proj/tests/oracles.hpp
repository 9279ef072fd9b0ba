// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations the production code is tested
// against. Deliberately naive: correctness over speed.

#ifndef EDLS_TESTS_ORACLES_HPP
#define EDLS_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "edls/ring/poly.hpp"
#include "edls/rng.hpp"

namespace edls::oracles {

// Schoolbook product in Z_q[X]/(X^N + 1): full convolution, then the
// wrap-around with a sign flip (X^N = -1).
inline ring::RingPoly schoolbook_negacyclic(const ring::RingPoly& a,
                                            const ring::RingPoly& b) {
  ring::check_same_ring(a, b);
  const std::size_t n = a.degree();
  const std::uint64_t q = a.modulus;
  std::vector<std::uint64_t> wide(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t prod = ring::mul_mod(a.coeffs[i], b.coeffs[j], q);
      wide[i + j] = ring::add_mod(wide[i + j], prod, q);
    }
  ring::RingPoly out(n, q);
  for (std::size_t i = 0; i < n; ++i)
    out.coeffs[i] = ring::sub_mod(wide[i], wide[i + n], q);
  return out;
}

inline ring::RingPoly random_poly(std::size_t degree, std::uint64_t q,
                                  SeededRng& rng) {
  ring::RingPoly out(degree, q);
  for (auto& c : out.coeffs) c = rng.below(q);
  return out;
}

// True logistic function, used as the ground truth the polynomial
// approximation is measured against.
inline double true_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Max absolute deviation of the cubic approximation from the true sigmoid
// over the grid x = -5.00, -4.99, ..., 5.00. Spelled out here rather than
// calling the production activation, so it stays an independent check.
inline double sigmoid_grid_deviation() {
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = static_cast<double>(i - 500) / 100.0;
    const double poly = 0.5 + 0.197 * x - 0.004 * x * x * x;
    worst = std::max(worst, std::abs(true_sigmoid(x) - poly));
  }
  return worst;
}

}  // namespace edls::oracles

#endif  // EDLS_TESTS_ORACLES_HPP
