// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_RING_NTT_HPP
#define EDLS_RING_NTT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "edls/ring/poly.hpp"

namespace edls::ring {

// Negacyclic number theoretic transform over Z_q, q ≡ 1 (mod 2N), N a power
// of two. The twist by powers of a primitive 2N-th root psi is merged into
// the butterflies, so the transform diagonalises multiplication modulo
// X^N + 1 directly: mul(a, b) = inverse(forward(a) ∘ forward(b)).
//
// forward() is a Cooley-Tukey decimation-in-time pass (natural input order,
// bit-reversed twiddle table); inverse() is Gentleman-Sande with the inverse
// table and a final scaling by N^-1. Twiddle products use Shoup
// precomputation, one 64x64 high-half multiply per butterfly.
class NttTable {
 public:
  // Throws Errc::unsupported_modulus unless degree is a power of two >= 2,
  // q is prime, q < 2^62 and q ≡ 1 (mod 2*degree).
  NttTable(std::size_t degree, std::uint64_t q);

  std::size_t degree() const { return n_; }
  std::uint64_t modulus() const { return q_; }
  std::uint64_t psi() const { return psi_; }

  // In-place transforms on a coefficient span of length degree().
  void forward(std::span<std::uint64_t> values) const;
  void inverse(std::span<std::uint64_t> values) const;

  RingPoly forward_copy(const RingPoly& a) const;
  RingPoly inverse_copy(const RingPoly& a) const;

  // Negacyclic product in the coefficient domain.
  RingPoly mul(const RingPoly& a, const RingPoly& b) const;

  // Pointwise product of two transforms (both of length degree()).
  void pointwise(std::span<const std::uint64_t> a,
                 std::span<const std::uint64_t> b,
                 std::span<std::uint64_t> out) const;
  void pointwise_accumulate(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<std::uint64_t> acc) const;

 private:
  std::size_t n_;
  int log_n_;
  std::uint64_t q_;
  std::uint64_t psi_;
  // Powers of psi (forward) and psi^-1 (inverse) in bit-reversed order,
  // paired with their Shoup precomputations.
  std::vector<std::uint64_t> psi_rev_, psi_rev_shoup_;
  std::vector<std::uint64_t> inv_psi_rev_, inv_psi_rev_shoup_;
  std::uint64_t n_inv_, n_inv_shoup_;
};

}  // namespace edls::ring

#endif  // EDLS_RING_NTT_HPP
