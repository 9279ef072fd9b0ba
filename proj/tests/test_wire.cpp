// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstring>
#include <functional>

#include "edls/he/context.hpp"
#include "edls/he/encoder.hpp"
#include "edls/he/encryptor.hpp"
#include "edls/he/evaluator.hpp"
#include "edls/he/keys.hpp"
#include "edls/wire/frame.hpp"
#include "edls/wire/record.hpp"
#include "edls/wire/serialize.hpp"

using namespace edls;
using namespace edls::wire;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_params;
}

// Shared encrypted fixture: params, keys, a few ciphertexts.
struct Rig {
  he::HEParams params = he::HEParams::insecure_test();
  std::shared_ptr<const he::Context> ctx = he::Context::create(params);
  SeededRng rng{2024};
  he::KeyBundle keys = he::KeyGenerator(ctx).generate(rng);
  he::Encoder encoder{ctx};
  he::Encryptor encryptor{ctx, keys.public_key};

  he::Ciphertext encrypt_values(double fill) {
    std::vector<double> v(params.slot_count(), fill);
    return encryptor.encrypt(
        encoder.encode(v, params.scale, params.top_level()), rng);
  }
};

bool same_rns(const he::RnsPoly& a, const he::RnsPoly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].modulus != b[i].modulus) return false;
    if (a[i].coeffs != b[i].coeffs) return false;
  }
  return true;
}

bool same_ciphertext(const he::Ciphertext& a, const he::Ciphertext& b) {
  if (a.level != b.level || a.scale != b.scale || a.param_id != b.param_id)
    return false;
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (!same_rns(a.parts[i], b.parts[i])) return false;
  return true;
}

RecordMeta sample_meta() {
  RecordMeta meta;
  meta.dataset_name = "herd-7";
  meta.owner = "farm-ops";
  meta.created_at = "2026-03-14T09:26:53.589Z";
  meta.window_count = 3;
  meta.window_length = 4;
  meta.n_features = 5;
  meta.sentinel_slot = 511;
  meta.sentinel_value = 0.5;
  return meta;
}

EncryptedRecord sample_record(Rig& rig, std::size_t n_cts) {
  EncryptedRecord rec;
  rec.params = rig.params;
  rec.meta = sample_meta();
  rec.public_key = rig.keys.public_key;
  rec.relin_key = rig.keys.relin;
  for (std::size_t i = 0; i < n_cts; ++i)
    rec.ciphertexts.push_back(rig.encrypt_values(0.1 * double(i + 1)));
  rec.secret_key = rig.keys.secret;
  return rec;
}

}  // namespace

TEST_SUITE_BEGIN("wire");

TEST_CASE("crc32 matches the published check value") {
  const char* text = "123456789";
  CHECK(crc32_of({reinterpret_cast<const std::uint8_t*>(text), 9}) ==
        0xCBF43926u);
  CHECK(crc32_of({}) == 0u);
}

TEST_CASE("frames round-trip sections, repeated tags included") {
  std::vector<Section> sections;
  sections.push_back({tag::meta, Bytes{1, 2, 3}});
  sections.push_back({tag::ciphertext, Bytes{9, 8}});
  sections.push_back({tag::ciphertext, Bytes{7}});
  sections.push_back({"XTRA", Bytes{}});  // empty payload is legal

  const Bytes frame_bytes = build_frame(sections);
  const Frame frame = parse_frame(frame_bytes);
  CHECK(frame.version == kVersion);
  REQUIRE(frame.sections.size() == 4);
  for (std::size_t i = 0; i < sections.size(); ++i) {
    CHECK(frame.sections[i].tag == sections[i].tag);
    CHECK(frame.sections[i].bytes == sections[i].bytes);
  }
  const auto cts = frame.sections_tagged(tag::ciphertext);
  REQUIRE(cts.size() == 2);
  CHECK((*cts[0] == Bytes{9, 8}));
  CHECK(*cts[1] == Bytes{7});
  CHECK(frame.has("XTRA"));
  CHECK_FALSE(frame.has(tag::secret_key));
  CHECK(code_of([&] { (void)frame.section(tag::secret_key); }) ==
        Errc::bad_frame);

  // Same input, same bytes: the container layout is fully determined.
  CHECK(build_frame(sections) == frame_bytes);
}

TEST_CASE("corrupted containers are rejected with typed errors") {
  const Bytes good = build_frame({{tag::meta, Bytes{10, 20, 30, 40}}});

  SUBCASE("wrong magic") {
    Bytes bad = good;
    bad[0] = 'X';
    CHECK(code_of([&] { (void)parse_frame(bad); }) == Errc::bad_frame);
  }
  SUBCASE("unknown version") {
    Bytes bad = good;
    bad[4] = 0x77;
    CHECK(code_of([&] { (void)parse_frame(bad); }) ==
          Errc::version_unsupported);
  }
  SUBCASE("payload bit flip fails the checksum") {
    Bytes bad = good;
    bad[bad.size() - 2] ^= 0x01;
    CHECK(code_of([&] { (void)parse_frame(bad); }) ==
          Errc::checksum_mismatch);
  }
  SUBCASE("checksum field corruption") {
    Bytes bad = good;
    bad[16] ^= 0xFF;
    CHECK(code_of([&] { (void)parse_frame(bad); }) ==
          Errc::checksum_mismatch);
  }
  SUBCASE("nonzero reserved field") {
    Bytes bad = good;
    bad[20] = 1;
    CHECK(code_of([&] { (void)parse_frame(bad); }) == Errc::bad_frame);
  }
  SUBCASE("truncation anywhere") {
    for (std::size_t keep : {std::size_t{0}, std::size_t{5},
                             std::size_t{23}, std::size_t{30},
                             good.size() - 1}) {
      Bytes bad(good.begin(), good.begin() + std::ptrdiff_t(keep));
      CHECK(code_of([&] { (void)parse_frame(bad); }) == Errc::bad_frame);
    }
  }
  SUBCASE("section table pointing outside the payload") {
    // Grow the declared section length without growing the payload.
    Bytes bad = good;
    bad[24 + 4] = 0xFF;  // section[0].offset low byte
    CHECK(code_of([&] { (void)parse_frame(bad); }) == Errc::bad_frame);
  }
  SUBCASE("trailing garbage") {
    Bytes bad = good;
    bad.push_back(0);
    CHECK(code_of([&] { (void)parse_frame(bad); }) == Errc::bad_frame);
  }
}

TEST_CASE("parameter payloads round-trip every field") {
  for (const he::HEParams& params :
       {he::HEParams::insecure_test(), he::HEParams::insecure_test_deep(),
        he::HEParams::desk()}) {
    const he::HEParams back = params_from_bytes(params_bytes(params));
    CHECK(back == params);
    CHECK(back.param_id() == params.param_id());
  }
  CHECK(code_of([] { (void)params_from_bytes(Bytes{1, 2, 3}); }) ==
        Errc::bad_frame);
}

TEST_CASE("ciphertexts round-trip bit-exactly at any level") {
  Rig rig;
  he::Evaluator eval(rig.ctx);
  for (int i = 0; i < 10; ++i) {
    he::Ciphertext ct = rig.encrypt_values(0.05 * double(i + 1));
    if (i % 2 == 1) ct = eval.mod_switch_to(ct, 0);
    const he::Ciphertext back =
        ciphertext_from_bytes(ciphertext_bytes(ct), rig.params);
    CHECK(same_ciphertext(ct, back));
    // Twice through the encoder yields identical bytes.
    CHECK(ciphertext_bytes(back) == ciphertext_bytes(ct));
  }
}

TEST_CASE("a level-0 ciphertext is a fraction of a fresh one on the wire") {
  Rig rig;
  he::Evaluator eval(rig.ctx);
  const he::Ciphertext fresh = rig.encrypt_values(0.25);
  const he::Ciphertext floor = eval.mod_switch_to(fresh, 0);
  const std::size_t top_bytes = ciphertext_bytes(fresh).size();
  const std::size_t floor_bytes = ciphertext_bytes(floor).size();
  CHECK(floor_bytes < top_bytes);
  // One residue component left out of top_level()+1.
  CHECK(floor_bytes * rig.params.chain.size() < top_bytes * 2);
}

TEST_CASE("hostile ciphertext payloads are rejected") {
  Rig rig;
  const he::Ciphertext ct = rig.encrypt_values(0.5);
  SUBCASE("unreduced coefficient") {
    he::Ciphertext evil = ct;
    evil.parts[0][0].coeffs[3] = evil.parts[0][0].modulus;  // out of range
    const Bytes payload = ciphertext_bytes(evil);
    CHECK(code_of([&] {
            (void)ciphertext_from_bytes(payload, rig.params);
          }) == Errc::bad_frame);
  }
  SUBCASE("foreign parameter id") {
    const Bytes payload = ciphertext_bytes(ct);
    CHECK(code_of([&] {
            (void)ciphertext_from_bytes(payload,
                                        he::HEParams::insecure_test_deep());
          }) == Errc::parameter_mismatch);
  }
  SUBCASE("truncated payload") {
    Bytes payload = ciphertext_bytes(ct);
    payload.resize(payload.size() / 2);
    CHECK(code_of([&] {
            (void)ciphertext_from_bytes(payload, rig.params);
          }) == Errc::bad_frame);
  }
}

TEST_CASE("standalone ciphertext frames carry their own parameters") {
  Rig rig;
  const he::Ciphertext ct = rig.encrypt_values(0.75);
  const Bytes frame = serialize_ciphertext(ct, rig.params);
  const he::Ciphertext back = deserialize_ciphertext(frame, rig.params);
  CHECK(same_ciphertext(ct, back));
  CHECK(code_of([&] {
          (void)deserialize_ciphertext(frame,
                                       he::HEParams::insecure_test_deep());
        }) == Errc::parameter_mismatch);
}

TEST_CASE("key material round-trips exactly") {
  Rig rig;
  SUBCASE("public key") {
    const he::PublicKey back =
        public_key_from_bytes(public_key_bytes(rig.keys.public_key),
                              rig.params);
    CHECK(back.param_id == rig.keys.public_key.param_id);
    CHECK(same_rns(back.b, rig.keys.public_key.b));
    CHECK(same_rns(back.a, rig.keys.public_key.a));
  }
  SUBCASE("relinearization key") {
    const he::RelinKey back =
        relin_key_from_bytes(relin_key_bytes(rig.keys.relin), rig.params);
    CHECK(back.param_id == rig.keys.relin.param_id);
    REQUIRE(back.digits.size() == rig.keys.relin.digits.size());
    for (std::size_t j = 0; j < back.digits.size(); ++j) {
      CHECK(same_rns(back.digits[j].b, rig.keys.relin.digits[j].b));
      CHECK(same_rns(back.digits[j].a, rig.keys.relin.digits[j].a));
    }
  }
  SUBCASE("secret key") {
    const he::SecretKey back =
        secret_key_from_bytes(secret_key_bytes(rig.keys.secret), rig.params);
    CHECK(back.param_id == rig.keys.secret.param_id);
    CHECK(back.coeffs == rig.keys.secret.coeffs);
  }
}

TEST_CASE("record metadata round-trips with and without optionals") {
  RecordMeta meta = sample_meta();
  SUBCASE("dataset form") {}
  SUBCASE("result form") {
    meta.model_id = "cnn-sigmoid-dense";
    meta.sentinel_expected = 0.6125;
  }
  const RecordMeta back = meta_from_bytes(meta_bytes(meta));
  CHECK(back.dataset_name == meta.dataset_name);
  CHECK(back.owner == meta.owner);
  CHECK(back.created_at == meta.created_at);
  CHECK(back.window_count == meta.window_count);
  CHECK(back.window_length == meta.window_length);
  CHECK(back.n_features == meta.n_features);
  CHECK(back.sentinel_slot == meta.sentinel_slot);
  CHECK(back.sentinel_value == meta.sentinel_value);
  CHECK(back.model_id == meta.model_id);
  CHECK(back.sentinel_expected == meta.sentinel_expected);
  CHECK(code_of([] { (void)meta_from_bytes(Bytes{'{', 'x'}); }) ==
        Errc::bad_frame);
}

TEST_CASE("records round-trip losslessly in local mode") {
  Rig rig;
  const EncryptedRecord rec = sample_record(rig, 3);
  const Bytes bytes = serialize_record(rec, RecordMode::local);
  const EncryptedRecord back = deserialize_record(bytes, RecordMode::local);

  CHECK(back.params == rec.params);
  CHECK(back.meta.dataset_name == rec.meta.dataset_name);
  CHECK(back.meta.window_count == rec.meta.window_count);
  REQUIRE(back.public_key.has_value());
  CHECK(same_rns(back.public_key->b, rec.public_key->b));
  REQUIRE(back.relin_key.has_value());
  CHECK(back.relin_key->digits.size() == rec.relin_key->digits.size());
  REQUIRE(back.secret_key.has_value());
  CHECK(back.secret_key->coeffs == rec.secret_key->coeffs);
  REQUIRE(back.ciphertexts.size() == rec.ciphertexts.size());
  for (std::size_t i = 0; i < rec.ciphertexts.size(); ++i)
    CHECK(same_ciphertext(back.ciphertexts[i], rec.ciphertexts[i]));

  // Serialization is canonical: a round-trip reproduces the bytes.
  CHECK(serialize_record(back, RecordMode::local) == bytes);
}

TEST_CASE("secret keys never cross the transmission boundary") {
  Rig rig;
  EncryptedRecord rec = sample_record(rig, 2);

  // Refusal on the way out...
  CHECK(code_of([&] {
          (void)serialize_record(rec, RecordMode::transmission);
        }) == Errc::secret_key_forbidden);

  // ...and on the way in, even if a frame was built by other means.
  const Bytes local_bytes = serialize_record(rec, RecordMode::local);
  CHECK(parse_frame(local_bytes).has(tag::secret_key));
  CHECK(code_of([&] {
          (void)deserialize_record(local_bytes, RecordMode::transmission);
        }) == Errc::secret_key_forbidden);

  // A stripped record flows through and carries no SECK section.
  rec.secret_key.reset();
  const Bytes tx = serialize_record(rec, RecordMode::transmission);
  CHECK_FALSE(parse_frame(tx).has(tag::secret_key));
  const EncryptedRecord back = deserialize_record(tx, RecordMode::transmission);
  CHECK_FALSE(back.secret_key.has_value());
  CHECK(back.ciphertexts.size() == 2);
}

TEST_CASE("unknown sections are skipped, not fatal") {
  Rig rig;
  EncryptedRecord rec = sample_record(rig, 1);
  rec.secret_key.reset();
  const Bytes tx = serialize_record(rec, RecordMode::transmission);

  // Rebuild the same frame with an extra section a future writer might add.
  Frame frame = parse_frame(tx);
  std::vector<Section> sections;
  for (auto& s : frame.sections) sections.push_back(std::move(s));
  sections.push_back({"FUTR", Bytes{1, 2, 3, 4}});
  const Bytes extended = build_frame(sections);

  const EncryptedRecord back =
      deserialize_record(extended, RecordMode::transmission);
  CHECK(back.ciphertexts.size() == 1);
  CHECK(back.meta.dataset_name == rec.meta.dataset_name);
}

TEST_CASE("record deserialization rejects structural nonsense") {
  Rig rig;
  SUBCASE("missing parameters section") {
    const Bytes bytes = build_frame({{tag::meta, meta_bytes(sample_meta())}});
    CHECK(code_of([&] {
            (void)deserialize_record(bytes, RecordMode::transmission);
          }) == Errc::bad_frame);
  }
  SUBCASE("missing metadata section") {
    const Bytes bytes =
        build_frame({{tag::params, params_bytes(rig.params)}});
    CHECK(code_of([&] {
            (void)deserialize_record(bytes, RecordMode::transmission);
          }) == Errc::bad_frame);
  }
  SUBCASE("ciphertext under mismatched parameters") {
    const he::Ciphertext ct = rig.encrypt_values(0.5);
    const Bytes bytes = build_frame(
        {{tag::params, params_bytes(he::HEParams::insecure_test_deep())},
         {tag::meta, meta_bytes(sample_meta())},
         {tag::ciphertext, ciphertext_bytes(ct)}});
    CHECK(code_of([&] {
            (void)deserialize_record(bytes, RecordMode::transmission);
          }) == Errc::parameter_mismatch);
  }
}

TEST_SUITE_END();
