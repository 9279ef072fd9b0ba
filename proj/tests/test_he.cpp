// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "edls/he/backend.hpp"
#include "edls/he/context.hpp"
#include "edls/he/encoder.hpp"
#include "edls/he/encryptor.hpp"
#include "edls/he/evaluator.hpp"
#include "edls/he/keys.hpp"
#include "edls/he/reference.hpp"
#include "edls/ring/ntt.hpp"
#include "edls/ring/sampling.hpp"
#include "oracles.hpp"

using namespace edls;
using namespace edls::he;

namespace {

// One self-contained fixture: context, keys, codec, crypto, evaluator.
struct Rig {
  HEParams params;
  std::shared_ptr<const Context> ctx;
  KeyBundle keys;
  Encoder encoder;
  Encryptor encryptor;
  Decryptor decryptor;
  Evaluator eval;
  SeededRng rng;

  static KeyBundle make_keys(const std::shared_ptr<const Context>& ctx,
                             std::uint64_t seed) {
    SeededRng key_rng(seed);
    return KeyGenerator(ctx).generate(key_rng);
  }

  explicit Rig(HEParams p, std::uint64_t seed = 4242)
      : params(std::move(p)),
        ctx(Context::create(params)),
        keys(make_keys(ctx, seed)),
        encoder(ctx),
        encryptor(ctx, keys.public_key),
        decryptor(ctx, keys.secret),
        eval(ctx, keys.relin),
        rng(seed + 1) {}

  Ciphertext enc(const std::vector<double>& v, int level = -1) {
    const int l = level < 0 ? params.top_level() : level;
    return encryptor.encrypt(encoder.encode(v, params.scale, l), rng);
  }
  std::vector<double> dec(const Ciphertext& ct) {
    return encoder.decode(decryptor.decrypt(ct));
  }
  std::vector<double> rand_vec(double lo = 0.0, double hi = 1.0) {
    std::vector<double> v(params.slot_count());
    for (auto& x : v) x = lo + (hi - lo) * rng.unit();
    return v;
  }
};

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b, std::size_t count) {
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_params;
}

}  // namespace

TEST_SUITE_BEGIN("he");

TEST_CASE("parameter presets validate and digest distinctly") {
  for (const HEParams& p :
       {HEParams::desk(), HEParams::desk_wide(), HEParams::insecure_test(),
        HEParams::insecure_test_deep()}) {
    CHECK_NOTHROW(p.validate());
    for (const std::uint64_t q : p.chain) {
      CHECK(q % (2 * p.degree) == 1);
      CHECK(static_cast<double>(q) > p.scale);
    }
  }
  CHECK(HEParams::desk().param_id() != HEParams::desk_wide().param_id());
  CHECK(HEParams::desk().param_id() != HEParams::insecure_test().param_id());
  HEParams tweaked = HEParams::desk();
  tweaked.scale *= 2.0;
  CHECK(tweaked.param_id() != HEParams::desk().param_id());
}

TEST_CASE("parameter validation rejects broken chains") {
  HEParams p = HEParams::insecure_test();
  SUBCASE("scale at or above a chain prime") {
    p.scale = static_cast<double>(p.chain[1]);
    CHECK(code_of([&] { p.validate(); }) == Errc::invalid_params);
  }
  SUBCASE("duplicate primes") {
    p.chain.push_back(p.chain[1]);
    CHECK(code_of([&] { p.validate(); }) == Errc::invalid_params);
  }
  SUBCASE("single prime has no room to rescale") {
    p.chain.resize(1);
    CHECK(code_of([&] { p.validate(); }) == Errc::invalid_params);
  }
  SUBCASE("non NTT-friendly prime") {
    p.chain[1] = 1000003;  // prime, but 1000003 mod 2048 != 1
    CHECK(code_of([&] { p.validate(); }) == Errc::unsupported_modulus);
  }
}

TEST_CASE("encode/decode of zeros is exact and roundtrip is tight") {
  Rig rig(HEParams::insecure_test());
  const std::vector<double> zeros(rig.params.slot_count(), 0.0);
  const Plaintext pt =
      rig.encoder.encode(zeros, rig.params.scale, rig.params.top_level());
  for (const auto& comp : pt.poly) CHECK(ring::is_zero(comp));
  const auto back = rig.encoder.decode(pt);
  for (double v : back) CHECK(v == 0.0);

  std::vector<double> v(rig.params.slot_count(), 0.0);
  v[0] = 0.5;
  v[1] = -0.25;
  v[2] = 1.0;
  const auto round = rig.encoder.decode(
      rig.encoder.encode(v, rig.params.scale, rig.params.top_level()));
  CHECK(max_abs_diff(v, round, v.size()) < 1e-6);
}

TEST_CASE("encoding rejects values that overflow the base prime") {
  Rig rig(HEParams::insecure_test());
  std::vector<double> huge(rig.params.slot_count(), 1e30);
  CHECK(code_of([&] {
          (void)rig.encoder.encode(huge, rig.params.scale,
                                   rig.params.top_level());
        }) == Errc::encoding_overflow);
}

TEST_CASE("encrypt/decrypt roundtrip stays within noise") {
  Rig rig(HEParams::insecure_test());
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = rig.rand_vec();
    CHECK(max_abs_diff(v, rig.dec(rig.enc(v)), v.size()) < 1e-3);
  }
  const std::vector<double> zeros(rig.params.slot_count(), 0.0);
  CHECK(max_abs_diff(zeros, rig.dec(rig.enc(zeros)), zeros.size()) < 1e-4);
}

TEST_CASE("encryption is randomized") {
  Rig rig(HEParams::insecure_test());
  const auto v = rig.rand_vec();
  const Ciphertext a = rig.enc(v);
  const Ciphertext b = rig.enc(v);
  CHECK(a.parts[0][0].coeffs != b.parts[0][0].coeffs);
}

TEST_CASE("key generation is deterministic and low-noise") {
  const HEParams params = HEParams::insecure_test();
  const auto ctx = Context::create(params);
  SeededRng r1(9), r2(9);
  const KeyBundle k1 = KeyGenerator(ctx).generate(r1);
  const KeyBundle k2 = KeyGenerator(ctx).generate(r2);
  CHECK(k1.secret.coeffs == k2.secret.coeffs);
  CHECK(k1.public_key.b == k2.public_key.b);
  CHECK(k1.relin.digits.size() == k2.relin.digits.size());

  // b + a*s must reduce to the error polynomial: centered magnitude <= 19.
  for (std::size_t i = 0; i < params.chain.size(); ++i) {
    const std::uint64_t q = params.chain[i];
    const ring::NttTable ntt(params.degree, q);
    const ring::RingPoly s = ring::reduce_to_ring(k1.secret.coeffs, q);
    const ring::RingPoly as = ntt.mul(k1.public_key.a[i], s);
    const ring::RingPoly e = ring::add(k1.public_key.b[i], as);
    for (const std::uint64_t c : e.coeffs)
      CHECK(std::abs(ring::center(c, q)) <= 19);
  }
}

TEST_CASE("homomorphic addition tracks plaintext addition") {
  Rig rig(HEParams::insecure_test());
  for (int trial = 0; trial < 100; ++trial) {
    const auto va = rig.rand_vec();
    const auto vb = rig.rand_vec();
    const Ciphertext a = rig.enc(va);
    const Ciphertext b = rig.enc(vb);

    const auto sum = rig.dec(rig.eval.add(a, b));
    for (std::size_t i = 0; i < va.size(); ++i)
      CHECK(std::abs(sum[i] - (va[i] + vb[i])) < 1e-3);

    // Commutativity is bit-exact: coefficient-wise modular adds commute.
    const Ciphertext ab = rig.eval.add(a, b);
    const Ciphertext ba = rig.eval.add(b, a);
    CHECK(ab.parts[0] == ba.parts[0]);
    CHECK(ab.parts[1] == ba.parts[1]);
  }
}

TEST_CASE("adding an encryption of zero is the identity under decryption") {
  Rig rig(HEParams::insecure_test());
  const auto v = rig.rand_vec();
  const Ciphertext ct = rig.enc(v);
  const Ciphertext zero = rig.enc(std::vector<double>(v.size(), 0.0));
  CHECK(max_abs_diff(v, rig.dec(rig.eval.add(ct, zero)), v.size()) < 1e-3);
}

TEST_CASE("plaintext addition and the encoded-zero identity") {
  Rig rig(HEParams::insecure_test());
  const auto v = rig.rand_vec();
  const auto w = rig.rand_vec();
  const Ciphertext ct = rig.enc(v);
  const Plaintext pt =
      rig.encoder.encode(w, rig.params.scale, rig.params.top_level());
  const auto sum = rig.dec(rig.eval.add_plain(ct, pt));
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(std::abs(sum[i] - (v[i] + w[i])) < 1e-3);

  const Plaintext zero = rig.encoder.encode(
      std::vector<double>(v.size(), 0.0), rig.params.scale,
      rig.params.top_level());
  CHECK(max_abs_diff(v, rig.dec(rig.eval.add_plain(ct, zero)), v.size()) <
        1e-3);
}

TEST_CASE("ciphertext multiplication: values, identity, commutativity") {
  Rig rig(HEParams::insecure_test());
  std::vector<double> twos(rig.params.slot_count(), 2.0);
  std::vector<double> threes(rig.params.slot_count(), 3.0);
  const Ciphertext a = rig.enc(twos);
  const Ciphertext b = rig.enc(threes);

  const Ciphertext prod = rig.eval.mul(a, b);
  CHECK(prod.level == rig.params.top_level() - 1);
  const auto values = rig.dec(prod);
  CHECK(std::abs(values[0] - 6.0) < 1e-2);

  const std::vector<double> v = rig.rand_vec();
  const Ciphertext ct = rig.enc(v);
  const Ciphertext ones = rig.enc(std::vector<double>(v.size(), 1.0));
  const auto idd = rig.dec(rig.eval.mul(ct, ones));
  CHECK(max_abs_diff(v, idd, v.size()) < 1e-2);

  const Ciphertext ab = rig.eval.mul(a, b);
  const Ciphertext ba = rig.eval.mul(b, a);
  CHECK(ab.parts[0] == ba.parts[0]);  // symmetric tensor + same switching key
  CHECK(ab.parts[1] == ba.parts[1]);
}

TEST_CASE("multiplication requires the relinearization key") {
  Rig rig(HEParams::insecure_test());
  const Evaluator bare(rig.ctx);  // no key
  const Ciphertext a = rig.enc(rig.rand_vec());
  CHECK(code_of([&] { (void)bare.mul(a, a); }) == Errc::invalid_params);
}

TEST_CASE("plaintext multiplication scales slots and distributes") {
  Rig rig(HEParams::insecure_test());
  const auto v = rig.rand_vec();
  const Ciphertext ct = rig.enc(v);
  const int top = rig.params.top_level();
  const Plaintext half = rig.encoder.encode(
      std::vector<double>(v.size(), 0.5), rig.params.scale, top);
  const auto scaled = rig.dec(rig.eval.mul_plain(ct, half));
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(std::abs(scaled[i] - 0.5 * v[i]) < 1e-2);

  const Plaintext one = rig.encoder.encode(
      std::vector<double>(v.size(), 1.0), rig.params.scale, top);
  CHECK(max_abs_diff(v, rig.dec(rig.eval.mul_plain(ct, one)), v.size()) <
        1e-2);

  // (a + b) * c == a*c + b*c under decryption.
  const auto vb = rig.rand_vec();
  const Ciphertext b = rig.enc(vb);
  const auto vc = rig.rand_vec();
  const Plaintext c = rig.encoder.encode(vc, rig.params.scale, top);
  const auto lhs = rig.dec(rig.eval.mul_plain(rig.eval.add(ct, b), c));
  const auto rhs_a = rig.dec(rig.eval.mul_plain(ct, c));
  const auto rhs_b = rig.dec(rig.eval.mul_plain(b, c));
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(std::abs(lhs[i] - (rhs_a[i] + rhs_b[i])) < 1e-2);
}

TEST_CASE("rescaling divides the scale by the dropped prime") {
  Rig rig(HEParams::insecure_test());
  const Ciphertext ct = rig.enc(rig.rand_vec());
  const int top = rig.params.top_level();
  const Ciphertext prod = rig.eval.mul(ct, ct);
  // mul rescales internally: scale is s^2 / q_top, one level down.
  CHECK(prod.level == top - 1);
  const double expected =
      rig.params.scale * rig.params.scale /
      static_cast<double>(rig.params.chain[static_cast<std::size_t>(top)]);
  CHECK(prod.scale == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("modulus switching preserves the plaintext") {
  Rig rig(HEParams::insecure_test());
  const auto v = rig.rand_vec();
  const Ciphertext ct = rig.enc(v);

  const Ciphertext same = rig.eval.mod_switch_to(ct, ct.level);
  CHECK(same.parts[0] == ct.parts[0]);
  CHECK(same.level == ct.level);

  const Ciphertext bottom = rig.eval.mod_switch_to(ct, 0);
  CHECK(bottom.level == 0);
  CHECK(bottom.parts[0].size() == 1);
  CHECK(max_abs_diff(v, rig.dec(bottom), v.size()) < 1e-3);

  CHECK(code_of([&] { (void)rig.eval.mod_switch_to(bottom, 1); }) ==
        Errc::invalid_switch);
}

TEST_CASE("misaligned operands raise typed errors") {
  Rig rig(HEParams::insecure_test());
  const auto v = rig.rand_vec();
  const Ciphertext a = rig.enc(v);
  const Ciphertext low = rig.eval.mod_switch_to(a, a.level - 1);
  CHECK(code_of([&] { (void)rig.eval.add(a, low); }) == Errc::level_mismatch);

  Ciphertext scaled = a;
  scaled.scale *= 2.0;
  CHECK(code_of([&] { (void)rig.eval.add(a, scaled); }) ==
        Errc::scale_mismatch);

  // Exhaust the chain: at level 0 there is nothing left to rescale into.
  const Ciphertext bottom = rig.eval.mod_switch_to(a, 0);
  CHECK(code_of([&] { (void)rig.eval.mul(bottom, bottom); }) ==
        Errc::out_of_levels);

  Rig other(HEParams::insecure_test_deep(), 77);
  const Ciphertext foreign = other.enc(other.rand_vec());
  CHECK(code_of([&] { (void)rig.eval.add(a, foreign); }) ==
        Errc::parameter_mismatch);
}

TEST_CASE("reference backend mirrors the encrypted backend exactly") {
  const HEParams params = HEParams::insecure_test();
  Rig rig(params);
  const RefBackend ref(params);
  const HeBackend real(rig.ctx, rig.keys.relin);

  // Same level/scale trajectory through a mul + rescale.
  const std::vector<double> v2{2.0}, v3{3.0};
  const RefBackend::Ct r2 = ref.fresh(v2, params.scale, params.top_level());
  const RefBackend::Ct r3 = ref.fresh(v3, params.scale, params.top_level());
  const RefBackend::Ct rprod = ref.mul(r2, r3);
  CHECK(rprod.slots[0] == doctest::Approx(6.0));

  const Ciphertext e2 = rig.enc(std::vector<double>(params.slot_count(), 2.0));
  const Ciphertext e3 = rig.enc(std::vector<double>(params.slot_count(), 3.0));
  const Ciphertext eprod = rig.eval.mul(e2, e3);
  CHECK(ref.level(rprod) == eprod.level);
  CHECK(ref.scale(rprod) == doctest::Approx(eprod.scale).epsilon(1e-12));

  // Same typed error at the same spot.
  const RefBackend::Ct rbottom = ref.mod_switch_to(rprod, 0);
  CHECK(code_of([&] { (void)ref.mul(rbottom, rbottom); }) ==
        Errc::out_of_levels);
}

TEST_SUITE_END();
