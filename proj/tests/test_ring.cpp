// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "edls/ring/modmath.hpp"
#include "edls/ring/ntt.hpp"
#include "edls/ring/poly.hpp"
#include "edls/ring/sampling.hpp"
#include "oracles.hpp"

using namespace edls;
using ring::RingPoly;

namespace {

RingPoly make(std::uint64_t q, std::vector<std::uint64_t> coeffs) {
  RingPoly p(coeffs.size(), q);
  p.coeffs = std::move(coeffs);
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("ring");

TEST_CASE("modular add matches hand-reduced examples") {
  CHECK(add(make(17, {1, 2}), make(17, {3, 4})) == make(17, {4, 6}));
  CHECK(add(make(17, {16, 5}), make(17, {2, 13})) == make(17, {1, 1}));
}

TEST_CASE("zero polynomial is the additive unity") {
  SeededRng rng(101);
  const RingPoly zero(8, 97);
  for (int i = 0; i < 20; ++i) {
    const RingPoly a = oracles::random_poly(8, 97, rng);
    CHECK(add(a, zero) == a);
  }
}

TEST_CASE("negate flips into [0, q)") {
  CHECK(ring::negate(make(17, {1, 5})) == make(17, {16, 12}));
  const RingPoly zero(4, 17);
  CHECK(ring::negate(zero) == zero);
}

TEST_CASE("a + negate(a) vanishes for random a") {
  SeededRng rng(102);
  for (int i = 0; i < 100; ++i) {
    const RingPoly a = oracles::random_poly(16, 97, rng);
    CHECK(ring::is_zero(add(a, ring::negate(a))));
  }
}

TEST_CASE("mixing rings is a parameter error") {
  CHECK_THROWS_AS((void)add(make(17, {1, 2}), make(97, {1, 2})), Error);
  try {
    (void)add(make(17, {1, 2}), make(17, {1, 2, 3, 4}));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parameter_mismatch);
  }
}

TEST_CASE("negacyclic product matches the frozen N=2 example") {
  // (1 + 2X)(3 + 4X) = 3 + 10X + 8X^2 = (3 - 8) + 10X mod (X^2 + 1, 17).
  const ring::NttTable ntt(2, 17);
  CHECK(ntt.mul(make(17, {1, 2}), make(17, {3, 4})) == make(17, {12, 10}));
}

TEST_CASE("one polynomial is the multiplicative unity") {
  SeededRng rng(103);
  const ring::NttTable ntt(16, 97);
  RingPoly one(16, 97);
  one.coeffs[0] = 1;
  for (int i = 0; i < 20; ++i) {
    const RingPoly a = oracles::random_poly(16, 97, rng);
    CHECK(ntt.mul(a, one) == a);
  }
}

TEST_CASE("ring multiplication commutes bit-exactly") {
  SeededRng rng(104);
  const ring::NttTable ntt(16, 97);
  for (int i = 0; i < 100; ++i) {
    const RingPoly a = oracles::random_poly(16, 97, rng);
    const RingPoly b = oracles::random_poly(16, 97, rng);
    CHECK(ntt.mul(a, b) == ntt.mul(b, a));
  }
}

TEST_CASE("NTT round-trips and maps zero to zero") {
  SeededRng rng(105);
  const ring::NttTable ntt(32, 12289);  // 12289 = 1 + 12 * 2^10
  for (int i = 0; i < 100; ++i) {
    const RingPoly a = oracles::random_poly(32, 12289, rng);
    CHECK(ntt.inverse_copy(ntt.forward_copy(a)) == a);
  }
  const RingPoly zero(32, 12289);
  CHECK(ntt.forward_copy(zero) == zero);
}

TEST_CASE("NTT product equals the schoolbook oracle") {
  SeededRng rng(106);
  for (const std::size_t n : {std::size_t{4}, std::size_t{8}}) {
    const ring::NttTable ntt(n, 97);
    for (int i = 0; i < 200; ++i) {
      const RingPoly a = oracles::random_poly(n, 97, rng);
      const RingPoly b = oracles::random_poly(n, 97, rng);
      CHECK(ntt.mul(a, b) == oracles::schoolbook_negacyclic(a, b));
    }
  }
}

TEST_CASE("NTT construction rejects unusable moduli") {
  auto code_of = [](auto&& construct) {
    try {
      construct();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::invalid_params;
  };
  // 19 is prime but 19 mod 8 = 3: no primitive 8th root exists.
  CHECK(code_of([] { ring::NttTable t(4, 19); }) ==
        Errc::unsupported_modulus);
  CHECK(code_of([] { ring::NttTable t(3, 97); }) ==
        Errc::unsupported_modulus);  // degree not a power of two
  CHECK(code_of([] { ring::NttTable t(4, 16); }) ==
        Errc::unsupported_modulus);  // composite modulus
}

TEST_CASE("primality and inverses behave on known values") {
  CHECK(ring::is_prime(17));
  CHECK(ring::is_prime(97));
  CHECK(ring::is_prime((std::uint64_t{1} << 61) - 1));  // Mersenne prime
  CHECK_FALSE(ring::is_prime(561));   // Carmichael number
  CHECK_FALSE(ring::is_prime(1));
  CHECK_FALSE(ring::is_prime(3215031751ull));  // strong pseudoprime to 2,3,5,7
  for (std::uint64_t a = 1; a < 17; ++a)
    CHECK(ring::mul_mod(a, ring::inv_mod(a, 17), 17) == 1);
}

TEST_CASE("prime search yields distinct NTT-friendly primes above the floor") {
  const auto primes = ring::find_ntt_primes(1024, 40, 4, {});
  CHECK(primes.size() == 4);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    CHECK(primes[i] >= (std::uint64_t{1} << 40));
    CHECK(ring::is_prime(primes[i]));
    CHECK(primes[i] % 2048 == 1);
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      CHECK(primes[i] != primes[j]);
  }
}

TEST_CASE("primitive 2N-th root has exact order 2N") {
  const std::uint64_t q = 97;
  const std::size_t n = 8;
  const std::uint64_t psi = ring::minimal_primitive_2nth_root(q, n);
  CHECK(ring::pow_mod(psi, 2 * n, q) == 1);
  CHECK(ring::pow_mod(psi, n, q) == q - 1);  // psi^N = -1: negacyclic twist
}

TEST_CASE("samplers are deterministic for a fixed seed") {
  SeededRng rng1(7), rng2(7);
  CHECK(ring::sample_ternary(64, rng1) == ring::sample_ternary(64, rng2));
  const ring::GaussianSampler g(3.2);
  CHECK(g.sample_vector(64, rng1) == g.sample_vector(64, rng2));
  CHECK(ring::sample_uniform(64, 97, rng1) ==
        ring::sample_uniform(64, 97, rng2));
}

TEST_CASE("ternary reduction lands in {q-1, 0, 1}") {
  SeededRng rng(108);
  const auto values = ring::sample_ternary(512, rng);
  const RingPoly p = ring::reduce_to_ring(values, 97);
  for (const std::uint64_t c : p.coeffs)
    CHECK((c == 0 || c == 1 || c == 96));
}

TEST_CASE("gaussian sampler respects the tail cut and is centered") {
  SeededRng rng(109);
  const ring::GaussianSampler g(3.2);
  CHECK(g.tail_bound() == 19);  // floor(6 * 3.2)
  double sum = 0.0;
  const std::size_t count = 10000;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int32_t v = g.sample(rng);
    CHECK(std::abs(v) <= 19);
    sum += v;
  }
  const double mean = sum / static_cast<double>(count);
  CHECK(std::abs(mean) <= 3.0 * 3.2 / std::sqrt(double(count)));
}

TEST_CASE("uniform sampling is unbiased at the modulus boundary") {
  SeededRng rng(110);
  const RingPoly p = ring::sample_uniform(4096, 17, rng);
  for (const std::uint64_t c : p.coeffs) CHECK(c < 17);
}

TEST_SUITE_END();
