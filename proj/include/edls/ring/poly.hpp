// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_RING_POLY_HPP
#define EDLS_RING_POLY_HPP

#include <cstdint>
#include <vector>

#include "edls/error.hpp"
#include "edls/ring/modmath.hpp"

namespace edls::ring {

// Element of R_q = Z_q[X] / (X^N + 1), stored as N coefficients in [0, q)
// in the power basis (coeffs[i] multiplies X^i).
struct RingPoly {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> coeffs;

  RingPoly() = default;
  RingPoly(std::size_t degree, std::uint64_t q)
      : modulus(q), coeffs(degree, 0) {}

  std::size_t degree() const { return coeffs.size(); }

  bool operator==(const RingPoly& other) const = default;
};

inline void check_same_ring(const RingPoly& a, const RingPoly& b) {
  if (a.modulus != b.modulus || a.degree() != b.degree())
    raise(Errc::parameter_mismatch, "ring elements from different rings");
}

inline RingPoly add(const RingPoly& a, const RingPoly& b) {
  check_same_ring(a, b);
  RingPoly out(a.degree(), a.modulus);
  for (std::size_t i = 0; i < a.degree(); ++i)
    out.coeffs[i] = add_mod(a.coeffs[i], b.coeffs[i], a.modulus);
  return out;
}

inline void add_inplace(RingPoly& a, const RingPoly& b) {
  check_same_ring(a, b);
  for (std::size_t i = 0; i < a.degree(); ++i)
    a.coeffs[i] = add_mod(a.coeffs[i], b.coeffs[i], a.modulus);
}

inline RingPoly sub(const RingPoly& a, const RingPoly& b) {
  check_same_ring(a, b);
  RingPoly out(a.degree(), a.modulus);
  for (std::size_t i = 0; i < a.degree(); ++i)
    out.coeffs[i] = sub_mod(a.coeffs[i], b.coeffs[i], a.modulus);
  return out;
}

inline RingPoly negate(const RingPoly& a) {
  RingPoly out(a.degree(), a.modulus);
  for (std::size_t i = 0; i < a.degree(); ++i)
    out.coeffs[i] = neg_mod(a.coeffs[i], a.modulus);
  return out;
}

inline bool is_zero(const RingPoly& a) {
  for (std::uint64_t c : a.coeffs)
    if (c != 0) return false;
  return true;
}

// Multiplication by a scalar already reduced mod q.
inline RingPoly scalar_mul(const RingPoly& a, std::uint64_t s) {
  RingPoly out(a.degree(), a.modulus);
  for (std::size_t i = 0; i < a.degree(); ++i)
    out.coeffs[i] = mul_mod(a.coeffs[i], s, a.modulus);
  return out;
}

}  // namespace edls::ring

#endif  // EDLS_RING_POLY_HPP
