// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_CIPHERTEXT_HPP
#define EDLS_HE_CIPHERTEXT_HPP

#include <cstdint>
#include <vector>

#include "edls/ring/poly.hpp"

namespace edls::he {

// Residue-number-system element: one ring polynomial per chain prime
// q_0..q_level, all congruent to the same underlying integer polynomial.
using RnsPoly = std::vector<ring::RingPoly>;

// Encoded message: an RNS polynomial together with the metadata that gives
// it meaning. `scale` is the factor the slot values were multiplied by
// before rounding; `level` indexes the modulus chain segment the residues
// cover (components 0..level).
struct Plaintext {
  RnsPoly poly;
  int level = 0;
  double scale = 0.0;
  std::uint64_t param_id = 0;
};

// Ciphertext: 2 polynomials (c0, c1) such that c0 + c1*s decrypts to the
// plaintext, or transiently 3 right after a tensor product (before
// relinearization folds the quadratic part back down). Every part is an RNS
// polynomial over components 0..level.
struct Ciphertext {
  std::vector<RnsPoly> parts;
  int level = 0;
  double scale = 0.0;
  std::uint64_t param_id = 0;

  std::size_t size() const { return parts.size(); }
};

}  // namespace edls::he

#endif  // EDLS_HE_CIPHERTEXT_HPP
