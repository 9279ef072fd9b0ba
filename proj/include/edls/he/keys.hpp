// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_KEYS_HPP
#define EDLS_HE_KEYS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "edls/he/ciphertext.hpp"
#include "edls/he/context.hpp"
#include "edls/rng.hpp"

namespace edls::he {

// The secret key is a ternary polynomial. The canonical representation is
// the signed coefficient vector; residues modulo any prime are derived on
// demand, so one key covers the whole chain and the switching prime.
struct SecretKey {
  std::vector<std::int8_t> coeffs;
  std::uint64_t param_id = 0;
};

// Encryption key: pair (b, a) with b = -a*s + e over the full chain.
struct PublicKey {
  RnsPoly b, a;
  std::uint64_t param_id = 0;
};

// Relinearization key: one switching pair per chain prime ("digit" j holds
// the residue of the quadratic part modulo q_j). Pairs live over the
// extended basis q_0..q_L plus the special prime (stored last), and digit j
// encrypts P * s^2 spread onto chain component j.
struct RelinKey {
  struct Digit {
    RnsPoly b, a;  // components 0..L, then the special prime
  };
  std::vector<Digit> digits;
  std::uint64_t param_id = 0;
};

struct KeyBundle {
  SecretKey secret;
  PublicKey public_key;
  RelinKey relin;
  std::uint64_t param_id = 0;
};

// Samples key material. Deterministic for a fixed rng stream, which is what
// makes encrypted regression tests reproducible.
class KeyGenerator {
 public:
  explicit KeyGenerator(std::shared_ptr<const Context> ctx);

  KeyBundle generate(SeededRng& rng) const;

 private:
  std::shared_ptr<const Context> ctx_;
};

}  // namespace edls::he

#endif  // EDLS_HE_KEYS_HPP
