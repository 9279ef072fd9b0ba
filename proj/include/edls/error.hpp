// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_ERROR_HPP
#define EDLS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace edls {

// Stable error codes shared by the crypto engine, the wire format and the
// service layer. The service maps these onto HTTP statuses; tests assert on
// them directly.
enum class Errc {
  // parameters / ring
  parameter_mismatch,
  unsupported_modulus,
  invalid_params,
  // evaluation
  out_of_levels,
  level_mismatch,
  scale_mismatch,
  needs_relinearization,
  encoding_overflow,
  invalid_switch,
  // neural network
  unsupported_on_encrypted,
  training_state,
  non_finite,
  model_format,
  // wire
  bad_frame,
  checksum_mismatch,
  version_unsupported,
  secret_key_forbidden,
  // service / client
  not_found,
  unauthorized,
  queue_full,
  payload_too_large,
  http_error,
  cannot_decrypt,
  sentinel_mismatch,
  store_error,
  // data wrangling
  unknown_column,
  bad_value,
  out_of_range,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace edls

#endif  // EDLS_ERROR_HPP
