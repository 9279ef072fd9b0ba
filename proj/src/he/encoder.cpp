// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/encoder.hpp"

#include <cmath>
#include <numbers>

#include "edls/error.hpp"
#include "edls/ring/sampling.hpp"

namespace edls::he {

Encoder::Encoder(std::shared_ptr<const Context> ctx)
    : ctx_(std::move(ctx)), fft_(ctx_->degree()) {
  const std::size_t n = ctx_->degree();
  zeta_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle =
        std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    zeta_[k] = std::polar(1.0, angle);
  }
}

void Encoder::check_level_scale(double scale, int level) const {
  if (level < 0 || level > ctx_->top_level())
    raise(Errc::invalid_params, "encoding level outside the chain");
  if (!(scale > 0) || !std::isfinite(scale))
    raise(Errc::invalid_params, "encoding scale must be finite and positive");
}

Plaintext Encoder::reduce_coefficients(const std::vector<std::int64_t>& coeffs,
                                       double scale, int level) const {
  Plaintext pt;
  pt.level = level;
  pt.scale = scale;
  pt.param_id = ctx_->param_id();
  pt.poly.reserve(level + 1);
  for (int i = 0; i <= level; ++i) {
    const std::uint64_t q = ctx_->prime(i);
    ring::RingPoly comp(ctx_->degree(), q);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const std::int64_t v = coeffs[k];
      if (v >= 0) {
        comp.coeffs[k] = static_cast<std::uint64_t>(v) % q;
      } else {
        const std::uint64_t r = static_cast<std::uint64_t>(-v) % q;
        comp.coeffs[k] = r == 0 ? 0 : q - r;
      }
    }
    pt.poly.push_back(std::move(comp));
  }
  return pt;
}

Plaintext Encoder::encode(std::span<const double> values, double scale,
                          int level) const {
  check_level_scale(scale, level);
  const std::size_t n = ctx_->degree();
  const std::size_t slots = ctx_->slot_count();
  if (values.size() > slots)
    raise(Errc::invalid_params, "more values than slots");
  for (double v : values)
    if (!std::isfinite(v)) raise(Errc::non_finite, "non-finite slot value");

  // Conjugate-symmetric evaluation vector: F_j holds slot j scaled by the
  // encoding scale, F_(N-1-j) its conjugate, missing slots are zero-padded.
  std::vector<std::complex<double>> f(n, 0.0);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const std::complex<double> e(values[j] * scale, 0.0);
    f[j] = e;
    f[n - 1 - j] = std::conj(e);
  }
  // Interpolate g with g_k = m_k * zeta^k, then untwist.
  fft_.interp(f);
  std::vector<std::int64_t> coeffs(n);
  const double limit =
      std::min(std::ldexp(1.0, 61), static_cast<double>(ctx_->prime(0)) / 2.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double real = (f[k] * std::conj(zeta_[k])).real();
    if (!std::isfinite(real) || std::abs(real) >= limit)
      raise(Errc::encoding_overflow, "coefficient exceeds modulus headroom");
    coeffs[k] = std::llround(real);
  }
  return reduce_coefficients(coeffs, scale, level);
}

Plaintext Encoder::encode_const(double value, double scale, int level) const {
  check_level_scale(scale, level);
  if (!std::isfinite(value)) raise(Errc::non_finite, "non-finite constant");
  const double scaled = value * scale;
  const double limit =
      std::min(std::ldexp(1.0, 61), static_cast<double>(ctx_->prime(0)) / 2.0);
  if (!std::isfinite(scaled) || std::abs(scaled) >= limit)
    raise(Errc::encoding_overflow, "constant exceeds modulus headroom");
  std::vector<std::int64_t> coeffs(ctx_->degree(), 0);
  coeffs[0] = std::llround(scaled);
  return reduce_coefficients(coeffs, scale, level);
}

std::vector<double> Encoder::decode(const Plaintext& pt) const {
  if (pt.param_id != ctx_->param_id())
    raise(Errc::parameter_mismatch, "plaintext from different parameters");
  if (pt.poly.empty() || pt.poly[0].degree() != ctx_->degree())
    raise(Errc::invalid_params, "malformed plaintext");
  if (!(pt.scale > 0))
    raise(Errc::invalid_params, "plaintext carries no scale");
  const std::size_t n = ctx_->degree();
  const std::uint64_t q0 = ctx_->prime(0);
  const double inv_scale = 1.0 / pt.scale;
  std::vector<std::complex<double>> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m =
        static_cast<double>(ring::center(pt.poly[0].coeffs[k], q0));
    g[k] = m * inv_scale * zeta_[k];
  }
  fft_.eval(g);
  std::vector<double> out(ctx_->slot_count());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = g[j].real();
  return out;
}

}  // namespace edls::he
