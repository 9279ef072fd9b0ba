// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/ring/modmath.hpp"

#include <algorithm>

#include "edls/error.hpp"

namespace edls::ring {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t q) {
  a %= q;
  if (a == 0) raise(Errc::invalid_params, "inverse of zero");
  return pow_mod(a, q - 2, q);
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d,
                          int r) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set decides primality exactly for every n < 2^64
  // (Sinclair's verified base set).
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

std::uint64_t find_prime_at_least(std::uint64_t floor_value,
                                  std::uint64_t stride) {
  // Smallest candidate ≡ 1 (mod stride) that is >= floor_value.
  std::uint64_t k = (floor_value + stride - 2) / stride;
  if (k == 0) k = 1;
  for (; k < (1ull << 62) / stride; ++k) {
    const std::uint64_t candidate = k * stride + 1;
    if (is_prime(candidate)) return candidate;
  }
  raise(Errc::invalid_params, "prime search exhausted");
}

std::vector<std::uint64_t> find_ntt_primes(
    std::size_t degree, int bits, std::size_t count,
    std::vector<std::uint64_t> exclude) {
  if (bits <= 1 || bits >= 62)
    raise(Errc::invalid_params, "prime size out of range");
  const std::uint64_t stride = 2 * static_cast<std::uint64_t>(degree);
  std::vector<std::uint64_t> found;
  std::uint64_t floor_value = 1ull << bits;
  while (found.size() < count) {
    const std::uint64_t q = find_prime_at_least(floor_value, stride);
    if (std::find(exclude.begin(), exclude.end(), q) == exclude.end())
      found.push_back(q);
    floor_value = q + 1;
  }
  return found;
}

std::uint64_t primitive_root(std::uint64_t q) {
  // Factor q - 1 by trial division (fine for the modulus sizes we use: the
  // cofactor after stripping small factors is prime or small).
  std::uint64_t phi = q - 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t m = phi;
  for (std::uint64_t p = 2; p * p <= m && p < (1u << 21); ++p) {
    if (m % p == 0) {
      factors.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) {
    if (!is_prime(m))
      raise(Errc::unsupported_modulus, "cannot factor group order");
    factors.push_back(m);
  }
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (std::uint64_t p : factors) {
      if (pow_mod(g, phi / p, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  raise(Errc::unsupported_modulus, "no primitive root found");
}

std::uint64_t minimal_primitive_2nth_root(std::uint64_t q, std::size_t n) {
  const std::uint64_t order = 2 * static_cast<std::uint64_t>(n);
  if ((q - 1) % order != 0)
    raise(Errc::unsupported_modulus, "modulus not 1 mod 2n");
  const std::uint64_t g = primitive_root(q);
  std::uint64_t psi = pow_mod(g, (q - 1) / order, q);
  // Any power psi^k with odd k is also a primitive 2n-th root; pick the
  // smallest so that tables are a canonical function of (q, n).
  std::uint64_t best = psi;
  const std::uint64_t psi_sq = mul_mod(psi, psi, q);
  std::uint64_t current = psi;
  for (std::size_t k = 1; k < n; ++k) {
    current = mul_mod(current, psi_sq, q);  // psi^(2k+1)
    best = std::min(best, current);
  }
  return best;
}

}  // namespace edls::ring
