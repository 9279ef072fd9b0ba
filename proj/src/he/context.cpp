// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/context.hpp"

#include "edls/ring/modmath.hpp"

namespace edls::he {

std::shared_ptr<const Context> Context::create(HEParams params) {
  return std::shared_ptr<const Context>(new Context(std::move(params)));
}

Context::Context(HEParams params) : params_(std::move(params)) {
  params_.validate();
  param_id_ = params_.param_id();
  const std::size_t count = params_.chain.size();
  tables_.reserve(count);
  for (std::uint64_t q : params_.chain) tables_.emplace_back(params_.degree, q);
  special_table_ =
      std::make_unique<ring::NttTable>(params_.degree, params_.special_prime);

  prime_mod_.resize(count);
  prime_inv_.resize(count);
  for (std::size_t l = 0; l < count; ++l) {
    prime_mod_[l].resize(l);
    prime_inv_[l].resize(l);
    for (std::size_t i = 0; i < l; ++i) {
      prime_mod_[l][i] = params_.chain[l] % params_.chain[i];
      prime_inv_[l][i] = ring::inv_mod(params_.chain[l], params_.chain[i]);
    }
  }
  special_mod_.resize(count);
  special_inv_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    special_mod_[i] = params_.special_prime % params_.chain[i];
    special_inv_[i] = ring::inv_mod(params_.special_prime, params_.chain[i]);
  }
}

}  // namespace edls::he
