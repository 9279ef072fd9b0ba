// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/ring/ntt.hpp"

#include <bit>

#include "edls/error.hpp"

namespace edls::ring {

NttTable::NttTable(std::size_t degree, std::uint64_t q) : n_(degree), q_(q) {
  if (n_ < 2 || !std::has_single_bit(n_))
    raise(Errc::unsupported_modulus, "degree must be a power of two >= 2");
  if (q >= (1ull << 62) || !is_prime(q))
    raise(Errc::unsupported_modulus, "modulus must be a prime below 2^62");
  if ((q - 1) % (2 * n_) != 0)
    raise(Errc::unsupported_modulus, "modulus must be 1 mod 2*degree");
  log_n_ = std::countr_zero(n_);

  psi_ = minimal_primitive_2nth_root(q, n_);
  const std::uint64_t inv_psi = inv_mod(psi_, q);

  psi_rev_.resize(n_);
  psi_rev_shoup_.resize(n_);
  inv_psi_rev_.resize(n_);
  inv_psi_rev_shoup_.resize(n_);
  std::vector<std::uint64_t> psi_pow(n_), inv_psi_pow(n_);
  psi_pow[0] = 1;
  inv_psi_pow[0] = 1;
  for (std::size_t i = 1; i < n_; ++i) {
    psi_pow[i] = mul_mod(psi_pow[i - 1], psi_, q);
    inv_psi_pow[i] = mul_mod(inv_psi_pow[i - 1], inv_psi, q);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint32_t r =
        reverse_bits(static_cast<std::uint32_t>(i), log_n_);
    psi_rev_[i] = psi_pow[r];
    psi_rev_shoup_[i] = shoup_precompute(psi_rev_[i], q);
    inv_psi_rev_[i] = inv_psi_pow[r];
    inv_psi_rev_shoup_[i] = shoup_precompute(inv_psi_rev_[i], q);
  }
  n_inv_ = inv_mod(static_cast<std::uint64_t>(n_), q);
  n_inv_shoup_ = shoup_precompute(n_inv_, q);
}

void NttTable::forward(std::span<std::uint64_t> a) const {
  if (a.size() != n_) raise(Errc::invalid_params, "bad transform length");
  std::size_t t = n_;
  for (std::size_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j1 = 2 * i * t;
      const std::uint64_t s = psi_rev_[m + i];
      const std::uint64_t s_shoup = psi_rev_shoup_[m + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const std::uint64_t u = a[j];
        const std::uint64_t v = mul_mod_shoup(a[j + t], s, s_shoup, q_);
        a[j] = add_mod(u, v, q_);
        a[j + t] = sub_mod(u, v, q_);
      }
    }
  }
}

void NttTable::inverse(std::span<std::uint64_t> a) const {
  if (a.size() != n_) raise(Errc::invalid_params, "bad transform length");
  std::size_t t = 1;
  for (std::size_t m = n_; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const std::uint64_t s = inv_psi_rev_[h + i];
      const std::uint64_t s_shoup = inv_psi_rev_shoup_[h + i];
      for (std::size_t j = j1; j < j1 + t; ++j) {
        const std::uint64_t u = a[j];
        const std::uint64_t v = a[j + t];
        a[j] = add_mod(u, v, q_);
        a[j + t] = mul_mod_shoup(sub_mod(u, v, q_), s, s_shoup, q_);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (std::size_t j = 0; j < n_; ++j)
    a[j] = mul_mod_shoup(a[j], n_inv_, n_inv_shoup_, q_);
}

RingPoly NttTable::forward_copy(const RingPoly& a) const {
  if (a.modulus != q_ || a.degree() != n_)
    raise(Errc::parameter_mismatch, "polynomial from a different ring");
  RingPoly out = a;
  forward(out.coeffs);
  return out;
}

RingPoly NttTable::inverse_copy(const RingPoly& a) const {
  if (a.modulus != q_ || a.degree() != n_)
    raise(Errc::parameter_mismatch, "polynomial from a different ring");
  RingPoly out = a;
  inverse(out.coeffs);
  return out;
}

RingPoly NttTable::mul(const RingPoly& a, const RingPoly& b) const {
  RingPoly fa = forward_copy(a);
  const RingPoly fb = forward_copy(b);
  pointwise(fa.coeffs, fb.coeffs, fa.coeffs);
  inverse(fa.coeffs);
  return fa;
}

void NttTable::pointwise(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b,
                         std::span<std::uint64_t> out) const {
  if (a.size() != n_ || b.size() != n_ || out.size() != n_)
    raise(Errc::invalid_params, "bad transform length");
  for (std::size_t i = 0; i < n_; ++i) out[i] = mul_mod(a[i], b[i], q_);
}

void NttTable::pointwise_accumulate(std::span<const std::uint64_t> a,
                                    std::span<const std::uint64_t> b,
                                    std::span<std::uint64_t> acc) const {
  if (a.size() != n_ || b.size() != n_ || acc.size() != n_)
    raise(Errc::invalid_params, "bad transform length");
  for (std::size_t i = 0; i < n_; ++i)
    acc[i] = add_mod(acc[i], mul_mod(a[i], b[i], q_), q_);
}

}  // namespace edls::ring
