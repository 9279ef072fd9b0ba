// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_EVALUATOR_HPP
#define EDLS_HE_EVALUATOR_HPP

#include <memory>
#include <optional>
#include <vector>

#include "edls/he/ciphertext.hpp"
#include "edls/he/context.hpp"
#include "edls/he/keys.hpp"

namespace edls::he {

// Homomorphic operations. Constructed with a relinearization key when
// ciphertext-ciphertext products are needed; additions and plaintext
// products work without one.
//
// Level/scale discipline enforced here:
//   * add/add_plain require equal levels and equal scales (relative
//     difference within 1e-9) — callers align operands explicitly, nothing
//     is rescaled behind their back;
//   * mul/mul_plain consume exactly one level: tensor (and relinearize),
//     then rescale by the top remaining prime, so the product of two
//     scale-Delta operands comes back at ~Delta;
//   * mod_switch_to only moves down the chain.
class Evaluator {
 public:
  explicit Evaluator(std::shared_ptr<const Context> ctx);
  Evaluator(std::shared_ptr<const Context> ctx, RelinKey relin_key);

  Ciphertext add(const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext add_plain(const Ciphertext& ct, const Plaintext& pt) const;

  // Full product: tensor, relinearize, rescale. Output level is one below
  // the operands, output scale is scale_a * scale_b / q_level.
  Ciphertext mul(const Ciphertext& a, const Ciphertext& b) const;

  // Plaintext product followed by the same rescale.
  Ciphertext mul_plain(const Ciphertext& ct, const Plaintext& pt) const;

  // Divides by the top prime of the current segment; level drops by one.
  Ciphertext rescale(const Ciphertext& ct) const;

  // Drops chain components above target_level; the scale is untouched.
  Ciphertext mod_switch_to(const Ciphertext& ct, int target_level) const;

 private:
  struct DigitNtt {
    RnsPoly b, a;  // transforms over components 0..L then the special prime
  };

  void check_ciphertext(const Ciphertext& ct) const;
  void check_pair(const Ciphertext& a, const Ciphertext& b) const;
  void check_scales(double a, double b) const;
  // Key-switches the quadratic part d2 (components 0..level) back to a
  // linear pair using the relinearization digits.
  std::pair<RnsPoly, RnsPoly> key_switch(const RnsPoly& d2, int level) const;

  std::shared_ptr<const Context> ctx_;
  std::optional<RelinKey> relin_;
  std::vector<DigitNtt> relin_ntt_;
};

}  // namespace edls::he

#endif  // EDLS_HE_EVALUATOR_HPP
