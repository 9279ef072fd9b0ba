// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_REFERENCE_HPP
#define EDLS_HE_REFERENCE_HPP

#include <span>
#include <vector>

#include "edls/he/backend.hpp"
#include "edls/he/params.hpp"

namespace edls::he {

// Plaintext twin of a ciphertext: the slot values in the clear, plus the
// exact level/scale metadata the encrypted object would carry.
struct RefCiphertext {
  std::vector<double> slots;
  int level = 0;
  double scale = 0.0;
};

struct RefPlaintext {
  std::vector<double> slots;
  int level = 0;
  double scale = 0.0;
};

// Reference evaluation backend: slot arithmetic on doubles with the same
// level and scale transitions — and the same failure modes — as the
// encrypted backend. A graph evaluated here predicts, slot for slot, what
// the encrypted evaluation must produce up to scheme noise.
class RefBackend {
 public:
  using Ct = RefCiphertext;
  using Pt = RefPlaintext;
  static constexpr bool encrypted = false;

  explicit RefBackend(HEParams params);

  Pt encode_slots(std::span<const double> values, double scale,
                  int level) const;
  Pt encode_const(double value, double scale, int level) const;
  Ct add(const Ct& a, const Ct& b) const;
  Ct add_plain(const Ct& ct, const Pt& pt) const;
  Ct mul(const Ct& a, const Ct& b) const;
  Ct mul_plain(const Ct& ct, const Pt& pt) const;
  Ct mod_switch_to(const Ct& ct, int level) const;
  int level(const Ct& ct) const { return ct.level; }
  double scale(const Ct& ct) const { return ct.scale; }
  double prime(int level) const;
  int top_level() const { return params_.top_level(); }
  double default_scale() const { return params_.scale; }
  std::size_t slot_count() const { return params_.slot_count(); }

  // Test-side conveniences with no encrypted counterpart.
  Ct fresh(std::span<const double> values, double scale, int level) const;
  const HEParams& params() const { return params_; }

 private:
  void check_level(int level) const;
  void check_ct(const Ct& ct) const;
  Ct rescale(Ct ct) const;

  HEParams params_;
};

static_assert(EvalBackend<RefBackend>);

}  // namespace edls::he

#endif  // EDLS_HE_REFERENCE_HPP
