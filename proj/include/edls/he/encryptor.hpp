// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_ENCRYPTOR_HPP
#define EDLS_HE_ENCRYPTOR_HPP

#include <memory>

#include "edls/he/ciphertext.hpp"
#include "edls/he/context.hpp"
#include "edls/he/keys.hpp"
#include "edls/rng.hpp"

namespace edls::he {

// Public-key encryption: c = (b*v + e0 + m, a*v + e1) with v ternary and
// e0, e1 from the error distribution.
class Encryptor {
 public:
  Encryptor(std::shared_ptr<const Context> ctx, PublicKey pk);

  Ciphertext encrypt(const Plaintext& pt, SeededRng& rng) const;

 private:
  std::shared_ptr<const Context> ctx_;
  PublicKey pk_;
  RnsPoly b_ntt_, a_ntt_;  // cached transforms of the key
};

// Secret-key decryption: m = c0 + c1*s (+ c2*s^2 never appears here; a
// three-part ciphertext must be relinearized first and is rejected).
class Decryptor {
 public:
  Decryptor(std::shared_ptr<const Context> ctx, SecretKey sk);

  Plaintext decrypt(const Ciphertext& ct) const;

 private:
  std::shared_ptr<const Context> ctx_;
  SecretKey sk_;
  RnsPoly s_ntt_;
};

}  // namespace edls::he

#endif  // EDLS_HE_ENCRYPTOR_HPP
