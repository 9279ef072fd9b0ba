// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_RNG_HPP
#define EDLS_RNG_HPP

#include <cstdint>
#include <random>

namespace edls {

// Deterministic randomness source. All sampling in the library is driven
// through this wrapper so that a fixed seed reproduces keys, ciphertexts and
// synthetic data bit-for-bit across runs and platforms (std::mt19937_64 has a
// fully specified output sequence; we deliberately avoid std::*_distribution,
// whose outputs are implementation-defined).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, bound) without modulo bias (rejection sampling).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % bound;
  }

  // Uniform double in [0, 1) with 53 bits of entropy.
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edls

#endif  // EDLS_RNG_HPP
