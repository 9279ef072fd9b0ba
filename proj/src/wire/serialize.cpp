// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/wire/serialize.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace edls::wire {

namespace {

using nlohmann::json;

void write_rns(ByteWriter& w, const he::RnsPoly& poly) {
  w.u32(static_cast<std::uint32_t>(poly.size()));
  for (const auto& comp : poly) {
    w.u64(comp.modulus);
    w.u32(static_cast<std::uint32_t>(comp.degree()));
    for (std::uint64_t c : comp.coeffs) w.u64(c);
  }
}

// Reads an RNS polynomial and checks it covers moduli[0..count) exactly.
he::RnsPoly read_rns(ByteReader& r, const he::HEParams& params,
                     std::size_t expect_components, bool with_special) {
  const std::uint32_t count = r.u32();
  if (count != expect_components)
    raise(Errc::bad_frame, "unexpected residue component count");
  he::RnsPoly poly;
  poly.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint64_t q = r.u64();
    const std::uint64_t expect_q =
        (with_special && i + 1 == count) ? params.special_prime
                                         : params.chain.at(i);
    if (q != expect_q)
      raise(Errc::parameter_mismatch,
            "component modulus does not match the parameter chain");
    const std::uint32_t degree = r.u32();
    if (degree != params.degree)
      raise(Errc::bad_frame, "component degree does not match parameters");
    ring::RingPoly comp(degree, q);
    for (std::uint32_t k = 0; k < degree; ++k) {
      const std::uint64_t c = r.u64();
      if (c >= q) raise(Errc::bad_frame, "coefficient not reduced modulo q");
      comp.coeffs[k] = c;
    }
    poly.push_back(std::move(comp));
  }
  return poly;
}

}  // namespace

Bytes params_bytes(const he::HEParams& params) {
  json j;
  j["degree"] = params.degree;
  j["chain"] = params.chain;
  j["special_prime"] = params.special_prime;
  j["scale"] = params.scale;
  j["error_sigma"] = params.error_sigma;
  j["profile"] = he::profile_name(params.profile);
  j["param_id"] = params.param_id();
  const std::string text = j.dump();
  return Bytes(text.begin(), text.end());
}

he::HEParams params_from_bytes(std::span<const std::uint8_t> data) {
  json j;
  try {
    j = json::parse(data.begin(), data.end());
  } catch (const json::exception& e) {
    raise(Errc::bad_frame,
          std::string("parameter descriptor is not valid JSON: ") + e.what());
  }
  try {
    he::HEParams params;
    params.degree = j.at("degree").get<std::size_t>();
    params.chain = j.at("chain").get<std::vector<std::uint64_t>>();
    params.special_prime = j.at("special_prime").get<std::uint64_t>();
    params.scale = j.at("scale").get<double>();
    params.error_sigma = j.at("error_sigma").get<double>();
    params.profile =
        he::profile_from_name(j.at("profile").get<std::string>());
    params.validate();
    if (j.contains("param_id") &&
        j.at("param_id").get<std::uint64_t>() != params.param_id())
      raise(Errc::bad_frame, "parameter digest does not match the fields");
    return params;
  } catch (const json::exception& e) {
    raise(Errc::bad_frame,
          std::string("malformed parameter descriptor: ") + e.what());
  }
}

Bytes ciphertext_bytes(const he::Ciphertext& ct) {
  ByteWriter w;
  w.u64(ct.param_id);
  w.i32(ct.level);
  w.f64(ct.scale);
  w.u32(static_cast<std::uint32_t>(ct.size()));
  for (const auto& part : ct.parts) write_rns(w, part);
  return w.take();
}

he::Ciphertext ciphertext_from_bytes(std::span<const std::uint8_t> data,
                                     const he::HEParams& params) {
  ByteReader r(data);
  he::Ciphertext ct;
  ct.param_id = r.u64();
  if (ct.param_id != params.param_id())
    raise(Errc::parameter_mismatch,
          "ciphertext was produced under different parameters");
  ct.level = r.i32();
  if (ct.level < 0 || ct.level > params.top_level())
    raise(Errc::bad_frame, "ciphertext level outside the chain");
  ct.scale = r.f64();
  if (!(ct.scale > 0) || !std::isfinite(ct.scale))
    raise(Errc::bad_frame, "ciphertext scale must be finite and positive");
  const std::uint32_t parts = r.u32();
  if (parts != 2 && parts != 3)
    raise(Errc::bad_frame, "ciphertext must have two or three parts");
  for (std::uint32_t p = 0; p < parts; ++p)
    ct.parts.push_back(read_rns(
        r, params, static_cast<std::size_t>(ct.level) + 1, false));
  r.expect_done();
  return ct;
}

Bytes public_key_bytes(const he::PublicKey& pk) {
  ByteWriter w;
  w.u64(pk.param_id);
  write_rns(w, pk.b);
  write_rns(w, pk.a);
  return w.take();
}

he::PublicKey public_key_from_bytes(std::span<const std::uint8_t> data,
                                    const he::HEParams& params) {
  ByteReader r(data);
  he::PublicKey pk;
  pk.param_id = r.u64();
  if (pk.param_id != params.param_id())
    raise(Errc::parameter_mismatch,
          "public key was produced under different parameters");
  pk.b = read_rns(r, params, params.chain.size(), false);
  pk.a = read_rns(r, params, params.chain.size(), false);
  r.expect_done();
  return pk;
}

Bytes relin_key_bytes(const he::RelinKey& rk) {
  ByteWriter w;
  w.u64(rk.param_id);
  w.u32(static_cast<std::uint32_t>(rk.digits.size()));
  for (const auto& digit : rk.digits) {
    write_rns(w, digit.b);
    write_rns(w, digit.a);
  }
  return w.take();
}

he::RelinKey relin_key_from_bytes(std::span<const std::uint8_t> data,
                                  const he::HEParams& params) {
  ByteReader r(data);
  he::RelinKey rk;
  rk.param_id = r.u64();
  if (rk.param_id != params.param_id())
    raise(Errc::parameter_mismatch,
          "relinearization key was produced under different parameters");
  const std::uint32_t digits = r.u32();
  if (digits != params.chain.size())
    raise(Errc::bad_frame, "relinearization key digit count is wrong");
  rk.digits.resize(digits);
  for (auto& digit : rk.digits) {
    digit.b = read_rns(r, params, params.chain.size() + 1, true);
    digit.a = read_rns(r, params, params.chain.size() + 1, true);
  }
  r.expect_done();
  return rk;
}

Bytes secret_key_bytes(const he::SecretKey& sk) {
  ByteWriter w;
  w.u64(sk.param_id);
  w.u32(static_cast<std::uint32_t>(sk.coeffs.size()));
  for (std::int8_t c : sk.coeffs)
    w.u8(static_cast<std::uint8_t>(static_cast<std::int32_t>(c) + 1));
  return w.take();
}

he::SecretKey secret_key_from_bytes(std::span<const std::uint8_t> data,
                                    const he::HEParams& params) {
  ByteReader r(data);
  he::SecretKey sk;
  sk.param_id = r.u64();
  if (sk.param_id != params.param_id())
    raise(Errc::parameter_mismatch,
          "secret key was produced under different parameters");
  const std::uint32_t degree = r.u32();
  if (degree != params.degree)
    raise(Errc::bad_frame, "secret key degree does not match parameters");
  sk.coeffs.resize(degree);
  for (std::uint32_t i = 0; i < degree; ++i) {
    const std::uint8_t v = r.u8();
    if (v > 2) raise(Errc::bad_frame, "secret key coefficient not ternary");
    sk.coeffs[i] = static_cast<std::int8_t>(static_cast<std::int32_t>(v) - 1);
  }
  r.expect_done();
  return sk;
}

Bytes serialize_ciphertext(const he::Ciphertext& ct,
                           const he::HEParams& params) {
  if (ct.param_id != params.param_id())
    raise(Errc::parameter_mismatch,
          "ciphertext was produced under different parameters");
  return build_frame({{tag::params, params_bytes(params)},
                      {tag::ciphertext, ciphertext_bytes(ct)}});
}

he::Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> data,
                                      const he::HEParams& params) {
  const Frame frame = parse_frame(data);
  const he::HEParams carried = params_from_bytes(frame.section(tag::params));
  if (carried.param_id() != params.param_id())
    raise(Errc::parameter_mismatch,
          "frame parameters do not match this context");
  return ciphertext_from_bytes(frame.section(tag::ciphertext), params);
}

}  // namespace edls::wire
