// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_HE_PARAMS_HPP
#define EDLS_HE_PARAMS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace edls::he {

// Declared security intent of a parameter set. `insecure_test` marks small
// rings meant for unit tests only; the client CLI refuses to ship data
// encrypted under them unless explicitly overridden.
enum class SecurityProfile { desk, insecure_test };

const char* profile_name(SecurityProfile p);
SecurityProfile profile_from_name(const std::string& name);

// Parameter set for the leveled approximate-arithmetic scheme.
//
// Ciphertexts live over a chain of word-sized primes q_0 .. q_L, each
// ≡ 1 (mod 2*degree) so the negacyclic transform applies. A ciphertext at
// level l carries residues modulo q_0..q_l; every multiplication rescales by
// the top remaining prime and drops one level. `special_prime` is a wider
// modulus used only inside key switching (it never carries ciphertext data),
// which keeps the switching noise additive instead of multiplicative.
//
// The inner chain primes are chosen a hair above `scale`, so rescaling
// divides by almost exactly the encoding scale and levels keep a uniform
// precision budget all the way down.
struct HEParams {
  std::size_t degree = 0;               // ring degree N (power of two)
  std::vector<std::uint64_t> chain;     // q_0 .. q_L, NTT-friendly primes
  std::uint64_t special_prime = 0;      // key-switching modulus P
  double scale = 0.0;                   // encoding scale Delta
  double error_sigma = 3.2;             // width of the error distribution
  SecurityProfile profile = SecurityProfile::insecure_test;

  std::size_t slot_count() const { return degree / 2; }
  int top_level() const { return static_cast<int>(chain.size()) - 1; }

  // Multiplicative depth supported from a fresh ciphertext.
  int depth_budget() const { return top_level(); }

  // Throws Errc::invalid_params when any structural constraint fails.
  void validate() const;

  // FNV-1a digest over every field; two parameter sets interoperate iff
  // their ids match. Stored in keys, ciphertexts and wire frames.
  std::uint64_t param_id() const;

  bool operator==(const HEParams& other) const = default;

  // Builds a chain from requested prime bit sizes, deterministically:
  // primes are the smallest NTT-friendly primes at or above each 2^bits,
  // distinct across the whole set.
  static HEParams create(std::size_t degree, const std::vector<int>& chain_bits,
                         int special_bits, double scale, double error_sigma,
                         SecurityProfile profile);

  // Default evaluation profile: N = 8192, a 60-bit base prime, five 40-bit
  // rescaling primes (depth 5) and a 60-bit switching prime, scale 2^40.
  static HEParams desk();

  // Same chain structure at N = 16384 (double slot capacity).
  static HEParams desk_wide();

  // Small rings for unit tests. Not secure: the degree is far too low.
  static HEParams insecure_test();        // N = 1024, depth 2
  static HEParams insecure_test_deep();   // N = 1024, depth 5
};

}  // namespace edls::he

#endif  // EDLS_HE_PARAMS_HPP
