// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/client/actions.hpp"

#include <cmath>
#include <thread>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "edls/error.hpp"
#include "edls/he/context.hpp"
#include "edls/he/encoder.hpp"
#include "edls/he/encryptor.hpp"
#include "edls/he/keys.hpp"
#include "edls/service/store.hpp"

namespace edls::client {

using nlohmann::json;

wire::EncryptedRecord encrypt_dataset(const std::vector<nn::Window>& windows,
                                      const EncryptOptions& options,
                                      const KeyStore& keystore,
                                      SeededRng& rng) {
  if (windows.empty()) raise(Errc::invalid_params, "no windows to encrypt");
  const std::size_t T = windows[0].size();
  if (T == 0) raise(Errc::invalid_params, "windows have no timesteps");
  const std::size_t F = windows[0][0].size();
  for (const auto& window : windows) {
    if (window.size() != T)
      raise(Errc::invalid_params, "windows have mixed lengths");
    for (const auto& step : window)
      if (step.size() != F)
        raise(Errc::invalid_params, "timesteps have mixed feature counts");
  }

  const auto ctx = he::Context::create(options.params);
  const std::size_t slots = options.params.slot_count();
  if (F + 1 > slots)
    raise(Errc::invalid_params,
          std::to_string(F) + " features plus the sentinel do not fit in " +
              std::to_string(slots) + " slots");

  he::KeyBundle keys;
  if (keystore.exists(options.dataset_name)) {
    KeyStore::Entry entry = keystore.load(options.dataset_name);
    if (!(entry.params == options.params))
      raise(Errc::parameter_mismatch,
            "dataset '" + options.dataset_name +
                "' already has keys under different parameters");
    keys = std::move(entry.keys);
  } else {
    keys = he::KeyGenerator(ctx).generate(rng);
    keystore.save(options.dataset_name, options.params, keys);
  }

  const he::Encoder encoder(ctx);
  const he::Encryptor encryptor(ctx, keys.public_key);
  const int top = options.params.top_level();
  const double scale = options.params.scale;

  wire::EncryptedRecord record;
  record.params = options.params;
  record.meta.dataset_name = options.dataset_name;
  record.meta.owner = options.owner;
  record.meta.created_at = service::now_iso8601();
  record.meta.window_count = static_cast<std::uint32_t>(windows.size());
  record.meta.window_length = static_cast<std::uint32_t>(T);
  record.meta.n_features = static_cast<std::uint32_t>(F);
  record.meta.sentinel_slot = static_cast<std::uint32_t>(slots - 1);
  record.meta.sentinel_value = 0.5;
  record.public_key = keys.public_key;
  record.relin_key = keys.relin;
  record.secret_key = keys.secret;

  std::vector<double> slot_values(slots, 0.0);
  record.ciphertexts.reserve(windows.size() * T);
  for (const auto& window : windows) {
    for (const auto& step : window) {
      std::fill(slot_values.begin(), slot_values.end(), 0.0);
      std::copy(step.begin(), step.end(), slot_values.begin());
      slot_values[slots - 1] = record.meta.sentinel_value;
      const he::Plaintext pt = encoder.encode(slot_values, scale, top);
      record.ciphertexts.push_back(encryptor.encrypt(pt, rng));
    }
  }
  return record;
}

wire::EncryptedRecord strip_secret(wire::EncryptedRecord record) {
  record.secret_key.reset();
  return record;
}

namespace {

// One connection per call: simple, stateless, and the payloads dwarf the
// handshake anyway.
httplib::Client make_client(const Remote& remote) {
  httplib::Client http(remote.base_url);
  http.set_connection_timeout(10, 0);
  http.set_read_timeout(600, 0);
  http.set_write_timeout(600, 0);
  http.set_default_headers({{"Authorization", "Bearer " + remote.token}});
  return http;
}

[[noreturn]] void raise_http(const std::string& what,
                             const httplib::Result& result) {
  if (!result)
    raise(Errc::http_error,
          what + ": cannot reach the server (" +
              httplib::to_string(result.error()) + ")");
  raise(Errc::http_error, what + ": HTTP " + std::to_string(result->status) +
                              " " + result->body);
}

json parse_body(const std::string& what, const httplib::Result& result) {
  try {
    return json::parse(result->body);
  } catch (const json::exception&) {
    raise(Errc::http_error, what + ": server sent malformed JSON");
  }
}

JobStatus status_from_json(const json& j) {
  JobStatus status;
  status.job_id = j.value("job_id", "");
  status.status = j.value("status", "");
  status.error = j.value("error", "");
  status.result_ready = j.value("result_ready", false);
  return status;
}

}  // namespace

std::vector<ModelInfo> list_models(const Remote& remote) {
  auto http = make_client(remote);
  const auto result = http.Get("/models");
  if (!result || result->status != 200) raise_http("GET /models", result);
  std::vector<ModelInfo> models;
  for (const auto& entry : parse_body("GET /models", result)) {
    ModelInfo info;
    info.model_id = entry.value("model_id", "");
    info.window_length = entry.value("window_length", 0u);
    info.n_features = entry.value("n_features", 0u);
    info.depth = entry.value("depth", 0);
    models.push_back(std::move(info));
  }
  return models;
}

std::string upload_dataset(const Remote& remote,
                           const wire::EncryptedRecord& record) {
  const wire::Bytes bytes = wire::serialize_record(
      strip_secret(record), wire::RecordMode::transmission);
  auto http = make_client(remote);
  const auto result =
      http.Post("/datasets", reinterpret_cast<const char*>(bytes.data()),
                bytes.size(), "application/octet-stream");
  if (!result || result->status != 201) raise_http("POST /datasets", result);
  const std::string id =
      parse_body("POST /datasets", result).value("dataset_id", "");
  if (id.empty())
    raise(Errc::http_error, "POST /datasets: no dataset_id in reply");
  return id;
}

std::string request_inference(const Remote& remote,
                              const std::string& dataset_id,
                              const std::string& model_id) {
  auto http = make_client(remote);
  const json body{{"dataset_id", dataset_id}, {"model_id", model_id}};
  const auto result =
      http.Post("/inferences", body.dump(), "application/json");
  if (!result || result->status != 201) raise_http("POST /inferences", result);
  const std::string id =
      parse_body("POST /inferences", result).value("job_id", "");
  if (id.empty())
    raise(Errc::http_error, "POST /inferences: no job_id in reply");
  return id;
}

JobStatus job_status(const Remote& remote, const std::string& job_id) {
  auto http = make_client(remote);
  const std::string path = "/inferences/" + job_id;
  const auto result = http.Get(path);
  if (!result || result->status != 200) raise_http("GET " + path, result);
  return status_from_json(parse_body("GET " + path, result));
}

JobStatus wait_for_job(const Remote& remote, const std::string& job_id,
                       std::chrono::milliseconds timeout,
                       std::chrono::milliseconds poll_interval) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    const JobStatus status = job_status(remote, job_id);
    if (status.status == "done" || status.status == "failed") return status;
    if (std::chrono::steady_clock::now() >= deadline)
      raise(Errc::http_error,
            "job " + job_id + " still '" + status.status + "' after " +
                std::to_string(timeout.count()) + " ms");
    std::this_thread::sleep_for(poll_interval);
  }
}

wire::EncryptedRecord fetch_result(const Remote& remote,
                                   const std::string& job_id) {
  auto http = make_client(remote);
  const std::string path = "/inferences/" + job_id + "/result";
  const auto result = http.Get(path);
  if (!result || result->status != 200) raise_http("GET " + path, result);
  const wire::Bytes bytes(result->body.begin(), result->body.end());
  return wire::deserialize_record(bytes, wire::RecordMode::transmission);
}

PredictionReport decrypt_result(const wire::EncryptedRecord& result,
                                const KeyStore& keystore,
                                double sentinel_tolerance) {
  const KeyStore::Entry entry = keystore.load(result.meta.dataset_name);
  if (!(entry.params == result.params))
    raise(Errc::cannot_decrypt,
          "stored keys for '" + result.meta.dataset_name +
              "' use different parameters than this result");

  const auto ctx = he::Context::create(entry.params);
  const he::Encoder encoder(ctx);
  const he::Decryptor decryptor(ctx, entry.keys.secret);

  PredictionReport report;
  if (result.meta.model_id) report.model_id = *result.meta.model_id;
  const std::size_t F = result.meta.n_features;

  for (const auto& ct : result.ciphertexts) {
    const std::vector<double> slots = encoder.decode(decryptor.decrypt(ct));
    if (F > slots.size())
      raise(Errc::bad_frame, "result metadata claims more features than "
                             "the parameters have slots");
    double prediction = 0.0;
    for (std::size_t f = 0; f < F; ++f) prediction += slots[f];
    report.predictions.push_back(prediction);
    if (result.meta.sentinel_slot)
      report.sentinel_values.push_back(slots.at(*result.meta.sentinel_slot));
  }

  if (result.meta.sentinel_slot && result.meta.sentinel_expected) {
    report.sentinel_expected = *result.meta.sentinel_expected;
    for (std::size_t w = 0; w < report.sentinel_values.size(); ++w) {
      const double got = report.sentinel_values[w];
      if (!(std::abs(got - report.sentinel_expected) <= sentinel_tolerance))
        raise(Errc::sentinel_mismatch,
              "window " + std::to_string(w) + ": sentinel decrypted to " +
                  std::to_string(got) + ", model arithmetic predicts " +
                  std::to_string(report.sentinel_expected) +
                  " — wrong key or corrupted result");
    }
  }
  return report;
}

}  // namespace edls::client
