// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/error.hpp"

namespace edls {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parameter_mismatch:
      return "parameter_mismatch";
    case Errc::unsupported_modulus:
      return "unsupported_modulus";
    case Errc::invalid_params:
      return "invalid_params";
    case Errc::out_of_levels:
      return "out_of_levels";
    case Errc::level_mismatch:
      return "level_mismatch";
    case Errc::scale_mismatch:
      return "scale_mismatch";
    case Errc::needs_relinearization:
      return "needs_relinearization";
    case Errc::encoding_overflow:
      return "encoding_overflow";
    case Errc::invalid_switch:
      return "invalid_switch";
    case Errc::unsupported_on_encrypted:
      return "unsupported_on_encrypted";
    case Errc::training_state:
      return "training_state";
    case Errc::non_finite:
      return "non_finite";
    case Errc::model_format:
      return "model_format";
    case Errc::bad_frame:
      return "bad_frame";
    case Errc::checksum_mismatch:
      return "checksum_mismatch";
    case Errc::version_unsupported:
      return "version_unsupported";
    case Errc::secret_key_forbidden:
      return "secret_key_forbidden";
    case Errc::not_found:
      return "not_found";
    case Errc::unauthorized:
      return "unauthorized";
    case Errc::queue_full:
      return "queue_full";
    case Errc::payload_too_large:
      return "payload_too_large";
    case Errc::http_error:
      return "http_error";
    case Errc::cannot_decrypt:
      return "cannot_decrypt";
    case Errc::sentinel_mismatch:
      return "sentinel_mismatch";
    case Errc::store_error:
      return "store_error";
    case Errc::unknown_column:
      return "unknown_column";
    case Errc::bad_value:
      return "bad_value";
    case Errc::out_of_range:
      return "out_of_range";
  }
  return "unknown_error";
}

}  // namespace edls
