// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/encryptor.hpp"

#include "edls/error.hpp"
#include "edls/ring/sampling.hpp"

namespace edls::he {

Encryptor::Encryptor(std::shared_ptr<const Context> ctx, PublicKey pk)
    : ctx_(std::move(ctx)), pk_(std::move(pk)) {
  if (pk_.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "public key from different parameters");
  if (pk_.a.size() != ctx_->params().chain.size() ||
      pk_.b.size() != pk_.a.size())
    raise(Errc::invalid_params, "public key does not cover the chain");
  b_ntt_.reserve(pk_.b.size());
  a_ntt_.reserve(pk_.a.size());
  for (std::size_t i = 0; i < pk_.a.size(); ++i) {
    b_ntt_.push_back(ctx_->table(i).forward_copy(pk_.b[i]));
    a_ntt_.push_back(ctx_->table(i).forward_copy(pk_.a[i]));
  }
}

Ciphertext Encryptor::encrypt(const Plaintext& pt, SeededRng& rng) const {
  if (pt.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "plaintext from different parameters");
  if (pt.level < 0 || pt.level > ctx_->top_level() ||
      pt.poly.size() != static_cast<std::size_t>(pt.level) + 1)
    raise(Errc::invalid_params, "plaintext level is inconsistent");

  const std::size_t n = ctx_->degree();
  const ring::GaussianSampler noise(ctx_->params().error_sigma);
  const std::vector<std::int8_t> v = ring::sample_ternary(n, rng);
  const std::vector<std::int32_t> e0 = noise.sample_vector(n, rng);
  const std::vector<std::int32_t> e1 = noise.sample_vector(n, rng);

  Ciphertext ct;
  ct.level = pt.level;
  ct.scale = pt.scale;
  ct.param_id = ctx_->param_id();
  ct.parts.assign(2, RnsPoly{});
  for (int i = 0; i <= pt.level; ++i) {
    const std::uint64_t q = ctx_->prime(i);
    const auto& table = ctx_->table(i);
    ring::RingPoly v_ntt = table.forward_copy(ring::reduce_to_ring(v, q));
    ring::RingPoly c0(n, q), c1(n, q);
    table.pointwise(b_ntt_[i].coeffs, v_ntt.coeffs, c0.coeffs);
    table.pointwise(a_ntt_[i].coeffs, v_ntt.coeffs, c1.coeffs);
    table.inverse(c0.coeffs);
    table.inverse(c1.coeffs);
    ring::add_inplace(c0, ring::reduce_to_ring(e0, q));
    ring::add_inplace(c0, pt.poly[i]);
    ring::add_inplace(c1, ring::reduce_to_ring(e1, q));
    ct.parts[0].push_back(std::move(c0));
    ct.parts[1].push_back(std::move(c1));
  }
  return ct;
}

Decryptor::Decryptor(std::shared_ptr<const Context> ctx, SecretKey sk)
    : ctx_(std::move(ctx)), sk_(std::move(sk)) {
  if (sk_.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "secret key from different parameters");
  if (sk_.coeffs.size() != ctx_->degree())
    raise(Errc::invalid_params, "secret key has wrong degree");
  const std::size_t count = ctx_->params().chain.size();
  s_ntt_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    s_ntt_.push_back(ctx_->table(i).forward_copy(
        ring::reduce_to_ring(sk_.coeffs, ctx_->prime(i))));
  }
}

Plaintext Decryptor::decrypt(const Ciphertext& ct) const {
  if (ct.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "ciphertext from different parameters");
  if (ct.size() == 3)
    raise(Errc::needs_relinearization,
          "three-part ciphertext must be relinearized before decryption");
  if (ct.size() != 2 || ct.level < 0 || ct.level > ctx_->top_level())
    raise(Errc::invalid_params, "malformed ciphertext");
  for (const auto& part : ct.parts)
    if (part.size() != static_cast<std::size_t>(ct.level) + 1)
      raise(Errc::invalid_params, "ciphertext level is inconsistent");

  Plaintext pt;
  pt.level = ct.level;
  pt.scale = ct.scale;
  pt.param_id = ctx_->param_id();
  pt.poly.reserve(ct.level + 1);
  for (int i = 0; i <= ct.level; ++i) {
    const auto& table = ctx_->table(i);
    ring::RingPoly c1s = table.forward_copy(ct.parts[1][i]);
    table.pointwise(c1s.coeffs, s_ntt_[i].coeffs, c1s.coeffs);
    table.inverse(c1s.coeffs);
    pt.poly.push_back(ring::add(ct.parts[0][i], c1s));
  }
  return pt;
}

}  // namespace edls::he
