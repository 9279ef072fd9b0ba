// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_RING_MODMATH_HPP
#define EDLS_RING_MODMATH_HPP

#include <cstdint>
#include <vector>

namespace edls::ring {

// Modular arithmetic on word-sized primes q < 2^62, using unsigned __int128
// for products. Inputs are assumed reduced (in [0, q)) unless noted.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b,
                             std::uint64_t q) {
  std::uint64_t s = a + b;  // no overflow: a, b < 2^62
  return s >= q ? s - q : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b,
                             std::uint64_t q) {
  return a >= b ? a - b : a + q - b;
}

inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t q) {
  return a == 0 ? 0 : q - a;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b,
                             std::uint64_t q) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % q);
}

// Shoup's trick: when one factor w is fixed, precompute
// w' = floor(w * 2^64 / q); then w * a mod q costs one 64x64 high half,
// one low multiply and one conditional subtraction.
inline std::uint64_t shoup_precompute(std::uint64_t w, std::uint64_t q) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(w) << 64) / q);
}

inline std::uint64_t mul_mod_shoup(std::uint64_t a, std::uint64_t w,
                                   std::uint64_t w_shoup, std::uint64_t q) {
  const std::uint64_t hi = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * w_shoup) >> 64);
  const std::uint64_t r = a * w - hi * q;  // wraparound arithmetic is exact
  return r >= q ? r - q : r;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp,
                             std::uint64_t q) {
  std::uint64_t acc = 1 % q;
  base %= q;
  while (exp != 0) {
    if (exp & 1) acc = mul_mod(acc, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return acc;
}

// Inverse modulo a prime q (Fermat). Requires a != 0 mod q.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q);

// Deterministic Miller-Rabin, exact for all 64-bit integers.
bool is_prime(std::uint64_t n);

// Smallest prime q >= floor_value with q ≡ 1 (mod stride). Throws
// Errc::invalid_params when the search space is exhausted.
std::uint64_t find_prime_at_least(std::uint64_t floor_value,
                                  std::uint64_t stride);

// Finds `count` distinct primes, each ≡ 1 (mod 2*degree) and >= 2^bits,
// ascending, skipping any prime already present in `exclude`.
std::vector<std::uint64_t> find_ntt_primes(std::size_t degree, int bits,
                                           std::size_t count,
                                           std::vector<std::uint64_t> exclude);

// A generator of the multiplicative group mod prime q, i.e. a primitive
// root. Used to derive 2N-th roots of unity for the number theoretic
// transform.
std::uint64_t primitive_root(std::uint64_t q);

// Primitive 2n-th root of unity mod q (requires q ≡ 1 mod 2n). The returned
// psi satisfies psi^n = -1 mod q.
std::uint64_t minimal_primitive_2nth_root(std::uint64_t q, std::size_t n);

inline std::uint32_t reverse_bits(std::uint32_t v, int bit_count) {
  std::uint32_t r = 0;
  for (int i = 0; i < bit_count; ++i) {
    r = (r << 1) | (v & 1);
    v >>= 1;
  }
  return r;
}

}  // namespace edls::ring

#endif  // EDLS_RING_MODMATH_HPP
