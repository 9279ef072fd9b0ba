// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/evaluator.hpp"

#include <cmath>

#include "edls/error.hpp"
#include "edls/ring/sampling.hpp"

namespace edls::he {

namespace {

// Residue modulo dst_q of the centered representative of (v mod src_q),
// given src_mod_dst = src_q % dst_q.
inline std::uint64_t centered_reduce(std::uint64_t v, std::uint64_t src_q,
                                     std::uint64_t dst_q,
                                     std::uint64_t src_mod_dst) {
  std::uint64_t r = v % dst_q;
  if (v > src_q / 2) r = ring::sub_mod(r, src_mod_dst, dst_q);
  return r;
}

}  // namespace

Evaluator::Evaluator(std::shared_ptr<const Context> ctx)
    : ctx_(std::move(ctx)) {}

Evaluator::Evaluator(std::shared_ptr<const Context> ctx, RelinKey relin_key)
    : ctx_(std::move(ctx)), relin_(std::move(relin_key)) {
  if (relin_->param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch,
          "relinearization key from different parameters");
  const std::size_t count = ctx_->params().chain.size();
  if (relin_->digits.size() != count)
    raise(Errc::invalid_params, "relinearization key missing digits");
  relin_ntt_.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& digit = relin_->digits[j];
    if (digit.b.size() != count + 1 || digit.a.size() != count + 1)
      raise(Errc::invalid_params, "relinearization digit missing components");
    auto& cache = relin_ntt_[j];
    cache.b.reserve(count + 1);
    cache.a.reserve(count + 1);
    for (std::size_t t = 0; t <= count; ++t) {
      const auto& table =
          t == count ? ctx_->special_table() : ctx_->table(t);
      cache.b.push_back(table.forward_copy(digit.b[t]));
      cache.a.push_back(table.forward_copy(digit.a[t]));
    }
  }
}

void Evaluator::check_ciphertext(const Ciphertext& ct) const {
  if (ct.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "ciphertext from different parameters");
  if (ct.level < 0 || ct.level > ctx_->top_level())
    raise(Errc::invalid_params, "ciphertext level outside the chain");
  if (ct.size() < 2)
    raise(Errc::invalid_params, "ciphertext has too few parts");
  for (const auto& part : ct.parts)
    if (part.size() != static_cast<std::size_t>(ct.level) + 1)
      raise(Errc::invalid_params, "ciphertext level is inconsistent");
}

void Evaluator::check_pair(const Ciphertext& a, const Ciphertext& b) const {
  check_ciphertext(a);
  check_ciphertext(b);
  if (a.level != b.level)
    raise(Errc::level_mismatch,
          "operands at levels " + std::to_string(a.level) + " and " +
              std::to_string(b.level) + "; align levels first");
}

void Evaluator::check_scales(double sa, double sb) const {
  const double diff = std::abs(sa - sb);
  if (diff > 1e-9 * std::max(std::abs(sa), std::abs(sb)))
    raise(Errc::scale_mismatch, "operand scales differ beyond tolerance");
}

Ciphertext Evaluator::add(const Ciphertext& a, const Ciphertext& b) const {
  check_pair(a, b);
  if (a.size() != 2 || b.size() != 2)
    raise(Errc::needs_relinearization,
          "addition expects two-part ciphertexts");
  check_scales(a.scale, b.scale);
  Ciphertext out = a;
  for (std::size_t p = 0; p < out.size(); ++p)
    for (int i = 0; i <= out.level; ++i)
      ring::add_inplace(out.parts[p][i], b.parts[p][i]);
  return out;
}

Ciphertext Evaluator::add_plain(const Ciphertext& ct,
                                const Plaintext& pt) const {
  check_ciphertext(ct);
  if (ct.size() != 2)
    raise(Errc::needs_relinearization,
          "addition expects a two-part ciphertext");
  if (pt.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "plaintext from different parameters");
  if (pt.level != ct.level)
    raise(Errc::level_mismatch,
          "plaintext level does not match ciphertext; align levels first");
  check_scales(ct.scale, pt.scale);
  Ciphertext out = ct;
  for (int i = 0; i <= out.level; ++i)
    ring::add_inplace(out.parts[0][i], pt.poly[i]);
  return out;
}

Ciphertext Evaluator::mul(const Ciphertext& a, const Ciphertext& b) const {
  check_pair(a, b);
  if (a.size() != 2 || b.size() != 2)
    raise(Errc::needs_relinearization,
          "product inputs must be relinearized two-part ciphertexts");
  if (!relin_)
    raise(Errc::invalid_params,
          "evaluator was built without a relinearization key");
  if (a.level < 1)
    raise(Errc::out_of_levels, "no level left to rescale a product");

  const int level = a.level;
  const std::size_t n = ctx_->degree();
  RnsPoly d0, d1, d2;
  d0.reserve(level + 1);
  d1.reserve(level + 1);
  d2.reserve(level + 1);
  for (int i = 0; i <= level; ++i) {
    const auto& table = ctx_->table(i);
    const std::uint64_t q = ctx_->prime(i);
    const ring::RingPoly a0 = table.forward_copy(a.parts[0][i]);
    const ring::RingPoly a1 = table.forward_copy(a.parts[1][i]);
    const ring::RingPoly b0 = table.forward_copy(b.parts[0][i]);
    const ring::RingPoly b1 = table.forward_copy(b.parts[1][i]);
    ring::RingPoly t0(n, q), t1(n, q), t2(n, q);
    table.pointwise(a0.coeffs, b0.coeffs, t0.coeffs);
    table.pointwise(a0.coeffs, b1.coeffs, t1.coeffs);
    table.pointwise_accumulate(a1.coeffs, b0.coeffs, t1.coeffs);
    table.pointwise(a1.coeffs, b1.coeffs, t2.coeffs);
    table.inverse(t0.coeffs);
    table.inverse(t1.coeffs);
    table.inverse(t2.coeffs);
    d0.push_back(std::move(t0));
    d1.push_back(std::move(t1));
    d2.push_back(std::move(t2));
  }

  auto [r0, r1] = key_switch(d2, level);
  Ciphertext product;
  product.level = level;
  product.scale = a.scale * b.scale;
  product.param_id = ctx_->param_id();
  product.parts.resize(2);
  product.parts[0] = std::move(d0);
  product.parts[1] = std::move(d1);
  for (int i = 0; i <= level; ++i) {
    ring::add_inplace(product.parts[0][i], r0[i]);
    ring::add_inplace(product.parts[1][i], r1[i]);
  }
  return rescale(product);
}

Ciphertext Evaluator::mul_plain(const Ciphertext& ct,
                                const Plaintext& pt) const {
  check_ciphertext(ct);
  if (ct.size() != 2)
    raise(Errc::needs_relinearization,
          "product input must be a relinearized two-part ciphertext");
  if (pt.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "plaintext from different parameters");
  if (pt.level != ct.level)
    raise(Errc::level_mismatch,
          "plaintext level does not match ciphertext; align levels first");
  if (ct.level < 1)
    raise(Errc::out_of_levels, "no level left to rescale a product");

  Ciphertext out;
  out.level = ct.level;
  out.scale = ct.scale * pt.scale;
  out.param_id = ctx_->param_id();
  out.parts.assign(2, RnsPoly{});
  for (int i = 0; i <= ct.level; ++i) {
    const auto& table = ctx_->table(i);
    const ring::RingPoly w = table.forward_copy(pt.poly[i]);
    for (std::size_t p = 0; p < 2; ++p) {
      ring::RingPoly c = table.forward_copy(ct.parts[p][i]);
      table.pointwise(c.coeffs, w.coeffs, c.coeffs);
      table.inverse(c.coeffs);
      out.parts[p].push_back(std::move(c));
    }
  }
  return rescale(out);
}

Ciphertext Evaluator::rescale(const Ciphertext& ct) const {
  check_ciphertext(ct);
  if (ct.level < 1)
    raise(Errc::out_of_levels, "cannot rescale below the base prime");
  const std::size_t l = static_cast<std::size_t>(ct.level);
  const std::uint64_t q_l = ctx_->prime(l);
  Ciphertext out;
  out.level = ct.level - 1;
  out.scale = ct.scale / static_cast<double>(q_l);
  out.param_id = ct.param_id;
  out.parts.assign(ct.size(), RnsPoly{});
  for (std::size_t p = 0; p < ct.size(); ++p) {
    const ring::RingPoly& last = ct.parts[p][l];
    for (std::size_t i = 0; i < l; ++i) {
      const std::uint64_t q_i = ctx_->prime(i);
      const std::uint64_t q_mod = ctx_->prime_mod(l, i);
      const std::uint64_t q_inv = ctx_->prime_inv(l, i);
      ring::RingPoly comp(ctx_->degree(), q_i);
      for (std::size_t k = 0; k < comp.degree(); ++k) {
        const std::uint64_t r =
            centered_reduce(last.coeffs[k], q_l, q_i, q_mod);
        comp.coeffs[k] = ring::mul_mod(
            ring::sub_mod(ct.parts[p][i].coeffs[k], r, q_i), q_inv, q_i);
      }
      out.parts[p].push_back(std::move(comp));
    }
  }
  return out;
}

Ciphertext Evaluator::mod_switch_to(const Ciphertext& ct,
                                    int target_level) const {
  check_ciphertext(ct);
  if (target_level < 0 || target_level > ct.level)
    raise(Errc::invalid_switch,
          "target level " + std::to_string(target_level) +
              " is not below the ciphertext level");
  Ciphertext out = ct;
  out.level = target_level;
  for (auto& part : out.parts)
    part.resize(static_cast<std::size_t>(target_level) + 1);
  return out;
}

std::pair<RnsPoly, RnsPoly> Evaluator::key_switch(const RnsPoly& d2,
                                                  int level) const {
  const std::size_t n = ctx_->degree();
  const std::size_t count = ctx_->params().chain.size();
  const std::size_t ext = static_cast<std::size_t>(level) + 2;

  // Accumulators over the extended basis (chain 0..level, special last),
  // kept in the transform domain until all digits are folded in.
  std::vector<std::vector<std::uint64_t>> acc0(ext), acc1(ext);
  for (std::size_t t = 0; t < ext; ++t) {
    acc0[t].assign(n, 0);
    acc1[t].assign(n, 0);
  }
  std::vector<std::uint64_t> tmp(n);
  for (int j = 0; j <= level; ++j) {
    const auto& digit = relin_ntt_[static_cast<std::size_t>(j)];
    for (std::size_t t = 0; t < ext; ++t) {
      const bool special = t == ext - 1;
      const auto& table = special ? ctx_->special_table() : ctx_->table(t);
      const std::uint64_t q_t = table.modulus();
      const auto& src = d2[static_cast<std::size_t>(j)].coeffs;
      for (std::size_t k = 0; k < n; ++k) tmp[k] = src[k] % q_t;
      table.forward(tmp);
      const std::size_t key_index = special ? count : t;
      table.pointwise_accumulate(tmp, digit.b[key_index].coeffs, acc0[t]);
      table.pointwise_accumulate(tmp, digit.a[key_index].coeffs, acc1[t]);
    }
  }
  for (std::size_t t = 0; t < ext; ++t) {
    const bool special = t == ext - 1;
    const auto& table = special ? ctx_->special_table() : ctx_->table(t);
    table.inverse(acc0[t]);
    table.inverse(acc1[t]);
  }

  // Divide by the special prime with centered rounding.
  const std::uint64_t p = ctx_->params().special_prime;
  RnsPoly r0, r1;
  r0.reserve(level + 1);
  r1.reserve(level + 1);
  for (int i = 0; i <= level; ++i) {
    const std::uint64_t q_i = ctx_->prime(i);
    const std::uint64_t p_mod = ctx_->special_mod(i);
    const std::uint64_t p_inv = ctx_->special_inv(i);
    ring::RingPoly out0(n, q_i), out1(n, q_i);
    const auto& sp0 = acc0[ext - 1];
    const auto& sp1 = acc1[ext - 1];
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t v0 = centered_reduce(sp0[k], p, q_i, p_mod);
      const std::uint64_t v1 = centered_reduce(sp1[k], p, q_i, p_mod);
      out0.coeffs[k] = ring::mul_mod(
          ring::sub_mod(acc0[i][k], v0, q_i), p_inv, q_i);
      out1.coeffs[k] = ring::mul_mod(
          ring::sub_mod(acc1[i][k], v1, q_i), p_inv, q_i);
    }
    r0.push_back(std::move(out0));
    r1.push_back(std::move(out1));
  }
  return {std::move(r0), std::move(r1)};
}

}  // namespace edls::he
