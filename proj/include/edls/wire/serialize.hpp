// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_WIRE_SERIALIZE_HPP
#define EDLS_WIRE_SERIALIZE_HPP

#include "edls/he/context.hpp"
#include "edls/he/keys.hpp"
#include "edls/wire/frame.hpp"

namespace edls::wire {

// Section payload encoders/decoders. Deserializers validate against the
// expected parameter set (degree, chain coverage, param_id) and throw
// Errc::bad_frame / Errc::parameter_mismatch on anything inconsistent —
// coefficients are also range-checked against their modulus so a hostile
// payload cannot smuggle unreduced values into the arithmetic.
Bytes params_bytes(const he::HEParams& params);
he::HEParams params_from_bytes(std::span<const std::uint8_t> data);

Bytes ciphertext_bytes(const he::Ciphertext& ct);
he::Ciphertext ciphertext_from_bytes(std::span<const std::uint8_t> data,
                                     const he::HEParams& params);

Bytes public_key_bytes(const he::PublicKey& pk);
he::PublicKey public_key_from_bytes(std::span<const std::uint8_t> data,
                                    const he::HEParams& params);

Bytes relin_key_bytes(const he::RelinKey& rk);
he::RelinKey relin_key_from_bytes(std::span<const std::uint8_t> data,
                                  const he::HEParams& params);

Bytes secret_key_bytes(const he::SecretKey& sk);
he::SecretKey secret_key_from_bytes(std::span<const std::uint8_t> data,
                                    const he::HEParams& params);

// Standalone single-object frames (self-describing: each carries its own
// HPRM section alongside the object).
Bytes serialize_ciphertext(const he::Ciphertext& ct,
                           const he::HEParams& params);
he::Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> data,
                                      const he::HEParams& params);

}  // namespace edls::wire

#endif  // EDLS_WIRE_SERIALIZE_HPP
