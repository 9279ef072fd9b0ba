// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/keys.hpp"

#include "edls/error.hpp"
#include "edls/ring/sampling.hpp"

namespace edls::he {

KeyGenerator::KeyGenerator(std::shared_ptr<const Context> ctx)
    : ctx_(std::move(ctx)) {}

KeyBundle KeyGenerator::generate(SeededRng& rng) const {
  const auto& params = ctx_->params();
  const std::size_t n = params.degree;
  const std::size_t count = params.chain.size();
  const ring::GaussianSampler noise(params.error_sigma);

  KeyBundle bundle;
  bundle.param_id = ctx_->param_id();

  // Secret key: one ternary draw, shared across every modulus.
  bundle.secret.coeffs = ring::sample_ternary(n, rng);
  bundle.secret.param_id = bundle.param_id;

  // Residues of s and s^2 per chain prime and per the special prime.
  std::vector<ring::RingPoly> s_ntt(count), s_sq(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& table = ctx_->table(i);
    const ring::RingPoly s_i =
        ring::reduce_to_ring(bundle.secret.coeffs, params.chain[i]);
    s_ntt[i] = table.forward_copy(s_i);
    ring::RingPoly sq = s_ntt[i];
    table.pointwise(s_ntt[i].coeffs, s_ntt[i].coeffs, sq.coeffs);
    s_sq[i] = table.inverse_copy(sq);
  }
  const auto& sp_table = ctx_->special_table();
  const ring::RingPoly s_sp =
      ring::reduce_to_ring(bundle.secret.coeffs, params.special_prime);
  const ring::RingPoly s_sp_ntt = sp_table.forward_copy(s_sp);

  // Public key over the full chain: b = e - a*s.
  const std::vector<std::int32_t> pk_noise = noise.sample_vector(n, rng);
  bundle.public_key.param_id = bundle.param_id;
  bundle.public_key.a.reserve(count);
  bundle.public_key.b.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& table = ctx_->table(i);
    ring::RingPoly a = ring::sample_uniform(n, params.chain[i], rng);
    ring::RingPoly a_ntt = table.forward_copy(a);
    ring::RingPoly as(n, params.chain[i]);
    table.pointwise(a_ntt.coeffs, s_ntt[i].coeffs, as.coeffs);
    table.inverse(as.coeffs);
    ring::RingPoly b =
        ring::sub(ring::reduce_to_ring(pk_noise, params.chain[i]), as);
    bundle.public_key.a.push_back(std::move(a));
    bundle.public_key.b.push_back(std::move(b));
  }

  // Relinearization key: digit j encrypts P*s^2 landed on chain prime j.
  bundle.relin.param_id = bundle.param_id;
  bundle.relin.digits.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    auto& digit = bundle.relin.digits[j];
    const std::vector<std::int32_t> e_j = noise.sample_vector(n, rng);
    digit.a.reserve(count + 1);
    digit.b.reserve(count + 1);
    for (std::size_t t = 0; t <= count; ++t) {
      const bool special = t == count;
      const std::uint64_t q =
          special ? params.special_prime : params.chain[t];
      const auto& table = special ? sp_table : ctx_->table(t);
      const auto& s_t = special ? s_sp_ntt : s_ntt[t];
      ring::RingPoly a = ring::sample_uniform(n, q, rng);
      ring::RingPoly a_ntt = table.forward_copy(a);
      ring::RingPoly as(n, q);
      table.pointwise(a_ntt.coeffs, s_t.coeffs, as.coeffs);
      table.inverse(as.coeffs);
      ring::RingPoly b = ring::sub(ring::reduce_to_ring(e_j, q), as);
      if (t == j) {
        // P * s^2 contributes only to the digit's own chain component; it
        // vanishes modulo every other prime and modulo P itself.
        const std::uint64_t p_mod = ctx_->special_mod(t);
        ring::add_inplace(b, ring::scalar_mul(s_sq[t], p_mod));
      }
      digit.a.push_back(std::move(a));
      digit.b.push_back(std::move(b));
    }
  }
  return bundle;
}

}  // namespace edls::he
