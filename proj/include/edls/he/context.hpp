// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_CONTEXT_HPP
#define EDLS_HE_CONTEXT_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "edls/he/params.hpp"
#include "edls/ring/ntt.hpp"

namespace edls::he {

// Immutable per-parameter-set state: validated parameters plus the
// transform tables and modular constants every operation needs. Shared by
// encoders, key generators, encryptors and evaluators via shared_ptr, so a
// single allocation serves a whole pipeline.
class Context {
 public:
  static std::shared_ptr<const Context> create(HEParams params);

  const HEParams& params() const { return params_; }
  std::uint64_t param_id() const { return param_id_; }
  std::size_t degree() const { return params_.degree; }
  std::size_t slot_count() const { return params_.slot_count(); }
  int top_level() const { return params_.top_level(); }

  const ring::NttTable& table(std::size_t chain_index) const {
    return tables_[chain_index];
  }
  const ring::NttTable& special_table() const { return *special_table_; }

  std::uint64_t prime(std::size_t chain_index) const {
    return params_.chain[chain_index];
  }

  // chain[l] % chain[i] and chain[l]^-1 mod chain[i], for i < l (rescale).
  std::uint64_t prime_mod(std::size_t l, std::size_t i) const {
    return prime_mod_[l][i];
  }
  std::uint64_t prime_inv(std::size_t l, std::size_t i) const {
    return prime_inv_[l][i];
  }

  // special % chain[i] and special^-1 mod chain[i] (key switching).
  std::uint64_t special_mod(std::size_t i) const { return special_mod_[i]; }
  std::uint64_t special_inv(std::size_t i) const { return special_inv_[i]; }

 private:
  explicit Context(HEParams params);

  HEParams params_;
  std::uint64_t param_id_;
  std::vector<ring::NttTable> tables_;
  std::unique_ptr<ring::NttTable> special_table_;
  std::vector<std::vector<std::uint64_t>> prime_mod_, prime_inv_;
  std::vector<std::uint64_t> special_mod_, special_inv_;
};

}  // namespace edls::he

#endif  // EDLS_HE_CONTEXT_HPP
