// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/ring/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "edls/error.hpp"

namespace edls::ring {

RingPoly sample_uniform(std::size_t degree, std::uint64_t q, SeededRng& rng) {
  RingPoly out(degree, q);
  for (std::size_t i = 0; i < degree; ++i) out.coeffs[i] = rng.below(q);
  return out;
}

std::vector<std::int8_t> sample_ternary(std::size_t degree, SeededRng& rng) {
  std::vector<std::int8_t> out(degree);
  for (std::size_t i = 0; i < degree; ++i)
    out[i] = static_cast<std::int8_t>(rng.below(3)) - 1;
  return out;
}

GaussianSampler::GaussianSampler(double sigma) {
  if (!(sigma > 0))
    raise(Errc::invalid_params, "gaussian width must be positive");
  tail_ = static_cast<std::int32_t>(std::floor(6.0 * sigma));
  const std::size_t support = 2 * static_cast<std::size_t>(tail_) + 1;
  std::vector<long double> weights(support);
  long double total = 0.0L;
  for (std::size_t i = 0; i < support; ++i) {
    const long double x =
        static_cast<long double>(static_cast<std::int64_t>(i) - tail_);
    weights[i] = std::exp(-x * x / (2.0L * sigma * sigma));
    total += weights[i];
  }
  cdf_.resize(support);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < support; ++i) {
    acc += weights[i];
    const long double scaled =
        acc / total * 18446744073709551615.0L;  // 2^64 - 1
    cdf_[i] = static_cast<std::uint64_t>(scaled);
  }
  cdf_.back() = UINT64_MAX;  // close the table regardless of rounding
}

std::int32_t GaussianSampler::sample(SeededRng& rng) const {
  const std::uint64_t r = rng.next();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), r);
  return static_cast<std::int32_t>(it - cdf_.begin()) - tail_;
}

std::vector<std::int32_t> GaussianSampler::sample_vector(
    std::size_t degree, SeededRng& rng) const {
  std::vector<std::int32_t> out(degree);
  for (std::size_t i = 0; i < degree; ++i) out[i] = sample(rng);
  return out;
}

namespace {

template <typename Int>
RingPoly reduce_impl(const std::vector<Int>& values, std::uint64_t q) {
  RingPoly out(values.size(), q);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int64_t v = values[i];
    if (v >= 0) {
      out.coeffs[i] = static_cast<std::uint64_t>(v) % q;
    } else {
      const std::uint64_t r = static_cast<std::uint64_t>(-v) % q;
      out.coeffs[i] = r == 0 ? 0 : q - r;
    }
  }
  return out;
}

}  // namespace

RingPoly reduce_to_ring(const std::vector<std::int8_t>& values,
                        std::uint64_t q) {
  return reduce_impl(values, q);
}

RingPoly reduce_to_ring(const std::vector<std::int32_t>& values,
                        std::uint64_t q) {
  return reduce_impl(values, q);
}

}  // namespace edls::ring
