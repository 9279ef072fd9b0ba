// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/reference.hpp"

#include <cmath>

#include "edls/error.hpp"

namespace edls::he {

RefBackend::RefBackend(HEParams params) : params_(std::move(params)) {
  params_.validate();
}

void RefBackend::check_level(int level) const {
  if (level < 0 || level > params_.top_level())
    raise(Errc::invalid_params, "level outside the chain");
}

void RefBackend::check_ct(const Ct& ct) const {
  check_level(ct.level);
  if (ct.slots.size() != params_.slot_count())
    raise(Errc::invalid_params, "slot vector has wrong length");
}

double RefBackend::prime(int level) const {
  check_level(level);
  return static_cast<double>(params_.chain[static_cast<std::size_t>(level)]);
}

RefBackend::Pt RefBackend::encode_slots(std::span<const double> values,
                                        double scale, int level) const {
  check_level(level);
  if (!(scale > 0) || !std::isfinite(scale))
    raise(Errc::invalid_params, "encoding scale must be finite and positive");
  if (values.size() > params_.slot_count())
    raise(Errc::invalid_params, "more values than slots");
  Pt pt;
  pt.level = level;
  pt.scale = scale;
  pt.slots.assign(params_.slot_count(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      raise(Errc::non_finite, "non-finite slot value");
    pt.slots[i] = values[i];
  }
  return pt;
}

RefBackend::Pt RefBackend::encode_const(double value, double scale,
                                        int level) const {
  check_level(level);
  if (!std::isfinite(value)) raise(Errc::non_finite, "non-finite constant");
  if (!(scale > 0) || !std::isfinite(scale))
    raise(Errc::invalid_params, "encoding scale must be finite and positive");
  Pt pt;
  pt.level = level;
  pt.scale = scale;
  pt.slots.assign(params_.slot_count(), value);
  return pt;
}

RefBackend::Ct RefBackend::fresh(std::span<const double> values, double scale,
                                 int level) const {
  const Pt pt = encode_slots(values, scale, level);
  return Ct{pt.slots, pt.level, pt.scale};
}

namespace {

void check_scales_match(double sa, double sb) {
  const double diff = std::abs(sa - sb);
  if (diff > 1e-9 * std::max(std::abs(sa), std::abs(sb)))
    raise(Errc::scale_mismatch, "operand scales differ beyond tolerance");
}

}  // namespace

RefBackend::Ct RefBackend::add(const Ct& a, const Ct& b) const {
  check_ct(a);
  check_ct(b);
  if (a.level != b.level)
    raise(Errc::level_mismatch,
          "operands at levels " + std::to_string(a.level) + " and " +
              std::to_string(b.level) + "; align levels first");
  check_scales_match(a.scale, b.scale);
  Ct out = a;
  for (std::size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] += b.slots[i];
  return out;
}

RefBackend::Ct RefBackend::add_plain(const Ct& ct, const Pt& pt) const {
  check_ct(ct);
  if (pt.level != ct.level)
    raise(Errc::level_mismatch,
          "plaintext level does not match ciphertext; align levels first");
  check_scales_match(ct.scale, pt.scale);
  Ct out = ct;
  for (std::size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] += pt.slots[i];
  return out;
}

RefBackend::Ct RefBackend::rescale(Ct ct) const {
  // Mirrors the encrypted rescale: one level down, scale divided by the
  // prime that was dropped. Slot values are unchanged (the scale metadata
  // absorbs the division).
  if (ct.level < 1)
    raise(Errc::out_of_levels, "no level left to rescale a product");
  ct.scale /= prime(ct.level);
  ct.level -= 1;
  return ct;
}

RefBackend::Ct RefBackend::mul(const Ct& a, const Ct& b) const {
  check_ct(a);
  check_ct(b);
  if (a.level != b.level)
    raise(Errc::level_mismatch,
          "operands at levels " + std::to_string(a.level) + " and " +
              std::to_string(b.level) + "; align levels first");
  if (a.level < 1)
    raise(Errc::out_of_levels, "no level left to rescale a product");
  Ct out = a;
  out.scale = a.scale * b.scale;
  for (std::size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] *= b.slots[i];
  return rescale(std::move(out));
}

RefBackend::Ct RefBackend::mul_plain(const Ct& ct, const Pt& pt) const {
  check_ct(ct);
  if (pt.level != ct.level)
    raise(Errc::level_mismatch,
          "plaintext level does not match ciphertext; align levels first");
  if (ct.level < 1)
    raise(Errc::out_of_levels, "no level left to rescale a product");
  Ct out = ct;
  out.scale = ct.scale * pt.scale;
  for (std::size_t i = 0; i < out.slots.size(); ++i)
    out.slots[i] *= pt.slots[i];
  return rescale(std::move(out));
}

RefBackend::Ct RefBackend::mod_switch_to(const Ct& ct, int level) const {
  check_ct(ct);
  if (level < 0 || level > ct.level)
    raise(Errc::invalid_switch,
          "target level " + std::to_string(level) +
              " is not below the ciphertext level");
  Ct out = ct;
  out.level = level;
  return out;
}

}  // namespace edls::he
