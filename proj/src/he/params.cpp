// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/he/params.hpp"

#include <bit>
#include <cmath>

#include "edls/error.hpp"
#include "edls/ring/modmath.hpp"

namespace edls::he {

const char* profile_name(SecurityProfile p) {
  switch (p) {
    case SecurityProfile::desk:
      return "desk";
    case SecurityProfile::insecure_test:
      return "insecure_test";
  }
  return "unknown";
}

SecurityProfile profile_from_name(const std::string& name) {
  if (name == "desk") return SecurityProfile::desk;
  if (name == "insecure_test") return SecurityProfile::insecure_test;
  raise(Errc::invalid_params, "unknown security profile: " + name);
}

void HEParams::validate() const {
  if (degree < 2 || !std::has_single_bit(degree))
    raise(Errc::invalid_params, "degree must be a power of two >= 2");
  if (chain.size() < 2)
    raise(Errc::invalid_params, "modulus chain needs at least two primes");
  if (special_prime == 0)
    raise(Errc::invalid_params, "missing key-switching prime");
  const std::uint64_t stride = 2 * static_cast<std::uint64_t>(degree);
  auto check_prime = [&](std::uint64_t q, const char* role) {
    if (q >= (1ull << 62))
      raise(Errc::unsupported_modulus,
            std::string(role) + " prime too large");
    if (!ring::is_prime(q))
      raise(Errc::unsupported_modulus,
            std::string(role) + " modulus not prime");
    if ((q - 1) % stride != 0)
      raise(Errc::unsupported_modulus,
            std::string(role) + " modulus not 1 mod 2*degree");
  };
  for (std::uint64_t q : chain) check_prime(q, "chain");
  check_prime(special_prime, "special");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j)
      if (chain[i] == chain[j])
        raise(Errc::invalid_params, "duplicate prime in chain");
    if (chain[i] == special_prime)
      raise(Errc::invalid_params, "special prime duplicates a chain prime");
  }
  if (!(scale > 1.0) || !std::isfinite(scale))
    raise(Errc::invalid_params, "scale must be a finite value > 1");
  for (std::uint64_t q : chain)
    if (scale >= static_cast<double>(q))
      raise(Errc::invalid_params, "scale must stay below every chain prime");
  if (!(error_sigma > 0))
    raise(Errc::invalid_params, "error width must be positive");
  // The switching prime must dominate every chain prime, otherwise the
  // rounding inside key switching would not be noise-preserving.
  for (std::uint64_t q : chain)
    if (special_prime < q)
      raise(Errc::invalid_params, "special prime smaller than a chain prime");
}

std::uint64_t HEParams::param_id() const {
  const std::uint64_t fnv_offset = 1469598103934665603ull;
  const std::uint64_t fnv_prime = 1099511628211ull;
  std::uint64_t h = fnv_offset;
  auto mix = [&](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= fnv_prime;
    }
  };
  mix(degree);
  mix(chain.size());
  for (std::uint64_t q : chain) mix(q);
  mix(special_prime);
  mix(std::bit_cast<std::uint64_t>(scale));
  mix(std::bit_cast<std::uint64_t>(error_sigma));
  mix(static_cast<std::uint64_t>(profile));
  return h;
}

HEParams HEParams::create(std::size_t degree,
                          const std::vector<int>& chain_bits, int special_bits,
                          double scale, double error_sigma,
                          SecurityProfile profile) {
  HEParams p;
  p.degree = degree;
  p.scale = scale;
  p.error_sigma = error_sigma;
  p.profile = profile;
  std::vector<std::uint64_t> taken;
  for (int bits : chain_bits) {
    const auto found = ring::find_ntt_primes(degree, bits, 1, taken);
    p.chain.push_back(found[0]);
    taken.push_back(found[0]);
  }
  p.special_prime = ring::find_ntt_primes(degree, special_bits, 1, taken)[0];
  p.validate();
  return p;
}

HEParams HEParams::desk() {
  return create(8192, {60, 40, 40, 40, 40, 40}, 60, std::ldexp(1.0, 40), 3.2,
                SecurityProfile::desk);
}

HEParams HEParams::desk_wide() {
  return create(16384, {60, 40, 40, 40, 40, 40}, 60, std::ldexp(1.0, 40), 3.2,
                SecurityProfile::desk);
}

HEParams HEParams::insecure_test() {
  return create(1024, {50, 40, 40}, 50, std::ldexp(1.0, 40), 3.2,
                SecurityProfile::insecure_test);
}

HEParams HEParams::insecure_test_deep() {
  return create(1024, {50, 40, 40, 40, 40, 40}, 50, std::ldexp(1.0, 40), 3.2,
                SecurityProfile::insecure_test);
}

}  // namespace edls::he
