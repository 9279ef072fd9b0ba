// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_CLIENT_ACTIONS_HPP
#define EDLS_CLIENT_ACTIONS_HPP

#include <chrono>
#include <string>
#include <vector>

#include "edls/client/keystore.hpp"
#include "edls/he/params.hpp"
#include "edls/nn/train.hpp"
#include "edls/rng.hpp"
#include "edls/wire/record.hpp"

namespace edls::client {

// ---------------------------------------------------------------------------
// Encryption side.

struct EncryptOptions {
  he::HEParams params;
  std::string dataset_name;
  std::string owner;
};

// Encrypts preprocessed windows into a local-mode record: one ciphertext
// per timestep, features in the leading slots, a 0.5 sentinel in the last
// slot. Keys come from the keystore when the dataset already has them
// (parameters must match) and are generated and stored otherwise. The
// returned record still holds the secret key — strip it before it leaves
// the machine.
wire::EncryptedRecord encrypt_dataset(const std::vector<nn::Window>& windows,
                                      const EncryptOptions& options,
                                      const KeyStore& keystore,
                                      SeededRng& rng);

// Copy without the secret key: what is allowed to travel.
wire::EncryptedRecord strip_secret(wire::EncryptedRecord record);

// ---------------------------------------------------------------------------
// Talking to the service. All calls raise Errc::http_error on transport
// failure or a non-2xx answer (with the server's message in the text).

struct Remote {
  std::string base_url;  // e.g. "http://127.0.0.1:8470"
  std::string token;
};

struct ModelInfo {
  std::string model_id;
  std::uint32_t window_length = 0;
  std::uint32_t n_features = 0;
  int depth = 0;
};

struct JobStatus {
  std::string job_id;
  std::string status;  // queued | running | done | failed
  std::string error;
  bool result_ready = false;
};

std::vector<ModelInfo> list_models(const Remote& remote);

// Strips the secret key, serializes for transmission and uploads.
// Returns the server-assigned dataset id.
std::string upload_dataset(const Remote& remote,
                           const wire::EncryptedRecord& record);

std::string request_inference(const Remote& remote,
                              const std::string& dataset_id,
                              const std::string& model_id);

JobStatus job_status(const Remote& remote, const std::string& job_id);

// Polls until the job leaves the queue (done or failed) or the deadline
// passes (Errc::http_error). Returns the final status.
JobStatus wait_for_job(const Remote& remote, const std::string& job_id,
                       std::chrono::milliseconds timeout,
                       std::chrono::milliseconds poll_interval =
                           std::chrono::milliseconds(100));

wire::EncryptedRecord fetch_result(const Remote& remote,
                                   const std::string& job_id);

// ---------------------------------------------------------------------------
// Decryption side.

struct PredictionReport {
  std::vector<double> predictions;  // one per window, normalized units
  std::string model_id;
  double sentinel_expected = 0.0;
  std::vector<double> sentinel_values;  // decrypted sentinel per window
};

// Decrypts a result record with the dataset's stored keys. The sentinel
// slot of every window must land within `sentinel_tolerance` of the value
// the model arithmetic predicts for it; a miss raises
// Errc::sentinel_mismatch (wrong key, wrong dataset or tampered payload).
PredictionReport decrypt_result(const wire::EncryptedRecord& result,
                                const KeyStore& keystore,
                                double sentinel_tolerance = 0.1);

}  // namespace edls::client

#endif  // EDLS_CLIENT_ACTIONS_HPP
