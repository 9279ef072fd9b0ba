// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_WIRE_RECORD_HPP
#define EDLS_WIRE_RECORD_HPP

#include <optional>
#include <string>
#include <vector>

#include "edls/he/keys.hpp"
#include "edls/wire/frame.hpp"

namespace edls::wire {

// Metadata travelling with a dataset or a result, as a JSON section.
struct RecordMeta {
  std::string dataset_name;
  std::string owner;
  std::string created_at;  // ISO-8601 UTC, millisecond resolution
  std::uint32_t window_count = 0;
  std::uint32_t window_length = 0;  // timesteps per window
  std::uint32_t n_features = 0;
  // Sentinel channel: a known constant in the last slot of every timestep.
  // After inference the client recomputes what the model must have turned
  // it into; a mismatch means the wrong key or tampered data.
  std::optional<std::uint32_t> sentinel_slot;
  double sentinel_value = 0.0;
  // Result-only fields.
  std::optional<std::string> model_id;
  std::optional<double> sentinel_expected;
};

// A complete encrypted dataset (or inference result): parameters, metadata,
// evaluation keys and ciphertexts — plus, in local storage only, the secret
// key. `transmission` mode is what crosses the network: serialization
// refuses to emit the secret key and deserialization refuses frames that
// contain one, so a leaky client is caught at the boundary on both ends.
struct EncryptedRecord {
  he::HEParams params;
  RecordMeta meta;
  std::optional<he::PublicKey> public_key;
  std::optional<he::RelinKey> relin_key;
  std::vector<he::Ciphertext> ciphertexts;
  std::optional<he::SecretKey> secret_key;
};

enum class RecordMode { local, transmission };

Bytes meta_bytes(const RecordMeta& meta);
RecordMeta meta_from_bytes(std::span<const std::uint8_t> data);

// Throws Errc::secret_key_forbidden when mode is transmission and the
// record (serialize) or frame (deserialize) carries a secret key.
Bytes serialize_record(const EncryptedRecord& record, RecordMode mode);
EncryptedRecord deserialize_record(std::span<const std::uint8_t> data,
                                   RecordMode mode);

}  // namespace edls::wire

#endif  // EDLS_WIRE_RECORD_HPP
