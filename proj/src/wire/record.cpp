// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/wire/record.hpp"

#include <nlohmann/json.hpp>

#include "edls/wire/serialize.hpp"

namespace edls::wire {

namespace {
using nlohmann::json;
}

Bytes meta_bytes(const RecordMeta& meta) {
  json j;
  j["dataset_name"] = meta.dataset_name;
  j["owner"] = meta.owner;
  j["created_at"] = meta.created_at;
  j["window_count"] = meta.window_count;
  j["window_length"] = meta.window_length;
  j["n_features"] = meta.n_features;
  if (meta.sentinel_slot) {
    j["sentinel_slot"] = *meta.sentinel_slot;
    j["sentinel_value"] = meta.sentinel_value;
  }
  if (meta.model_id) j["model_id"] = *meta.model_id;
  if (meta.sentinel_expected) j["sentinel_expected"] = *meta.sentinel_expected;
  const std::string text = j.dump();
  return Bytes(text.begin(), text.end());
}

RecordMeta meta_from_bytes(std::span<const std::uint8_t> data) {
  json j;
  try {
    j = json::parse(data.begin(), data.end());
  } catch (const json::exception& e) {
    raise(Errc::bad_frame,
          std::string("metadata is not valid JSON: ") + e.what());
  }
  try {
    RecordMeta meta;
    meta.dataset_name = j.at("dataset_name").get<std::string>();
    meta.owner = j.at("owner").get<std::string>();
    meta.created_at = j.at("created_at").get<std::string>();
    meta.window_count = j.at("window_count").get<std::uint32_t>();
    meta.window_length = j.at("window_length").get<std::uint32_t>();
    meta.n_features = j.at("n_features").get<std::uint32_t>();
    if (j.contains("sentinel_slot")) {
      meta.sentinel_slot = j.at("sentinel_slot").get<std::uint32_t>();
      meta.sentinel_value = j.at("sentinel_value").get<double>();
    }
    if (j.contains("model_id"))
      meta.model_id = j.at("model_id").get<std::string>();
    if (j.contains("sentinel_expected"))
      meta.sentinel_expected = j.at("sentinel_expected").get<double>();
    if (meta.dataset_name.empty())
      raise(Errc::bad_frame, "record has an empty dataset name");
    return meta;
  } catch (const json::exception& e) {
    raise(Errc::bad_frame, std::string("malformed metadata: ") + e.what());
  }
}

Bytes serialize_record(const EncryptedRecord& record, RecordMode mode) {
  if (record.meta.dataset_name.empty())
    raise(Errc::bad_frame, "record has an empty dataset name");
  if (record.ciphertexts.empty())
    raise(Errc::bad_frame, "record carries no ciphertexts");
  if (mode == RecordMode::transmission && record.secret_key)
    raise(Errc::secret_key_forbidden,
          "refusing to serialize a secret key for transmission");

  std::vector<Section> sections;
  sections.push_back({tag::params, params_bytes(record.params)});
  sections.push_back({tag::meta, meta_bytes(record.meta)});
  if (record.public_key)
    sections.push_back({tag::public_key, public_key_bytes(*record.public_key)});
  if (record.relin_key)
    sections.push_back({tag::relin_key, relin_key_bytes(*record.relin_key)});
  for (const auto& ct : record.ciphertexts)
    sections.push_back({tag::ciphertext, ciphertext_bytes(ct)});
  if (mode == RecordMode::local && record.secret_key)
    sections.push_back({tag::secret_key, secret_key_bytes(*record.secret_key)});
  return build_frame(sections);
}

EncryptedRecord deserialize_record(std::span<const std::uint8_t> data,
                                   RecordMode mode) {
  const Frame frame = parse_frame(data);
  if (mode == RecordMode::transmission && frame.has(tag::secret_key))
    raise(Errc::secret_key_forbidden,
          "transmission frame contains a secret key section");

  EncryptedRecord record;
  record.params = params_from_bytes(frame.section(tag::params));
  record.meta = meta_from_bytes(frame.section(tag::meta));
  if (frame.has(tag::public_key))
    record.public_key =
        public_key_from_bytes(frame.section(tag::public_key), record.params);
  if (frame.has(tag::relin_key))
    record.relin_key =
        relin_key_from_bytes(frame.section(tag::relin_key), record.params);
  for (const Bytes* ct_bytes : frame.sections_tagged(tag::ciphertext))
    record.ciphertexts.push_back(
        ciphertext_from_bytes(*ct_bytes, record.params));
  if (record.ciphertexts.empty())
    raise(Errc::bad_frame, "record carries no ciphertexts");
  if (frame.has(tag::secret_key))
    record.secret_key =
        secret_key_from_bytes(frame.section(tag::secret_key), record.params);
  return record;
}

}  // namespace edls::wire
