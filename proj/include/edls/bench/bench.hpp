// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_BENCH_BENCH_HPP
#define EDLS_BENCH_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "edls/he/params.hpp"

namespace edls::bench {

// One measured operation. `scope` is "local" for in-process work and
// "remote" for operations that cross the HTTP boundary.
struct OpRow {
  std::string op;
  std::string scope;
  double mean_s = 0.0;
  double std_s = 0.0;
  std::size_t trials = 0;
};

// Serialized object sizes for one parameter set, measured from real
// encodings rather than computed from formulas.
struct SizeRow {
  std::string profile;
  std::size_t degree = 0;
  std::size_t slot_count = 0;
  std::size_t plaintext_bytes = 0;       // raw slot vector (doubles)
  std::size_t ciphertext_top_bytes = 0;  // fresh ciphertext, full chain
  std::size_t ciphertext_l0_bytes = 0;   // after switching to level 0
  double expansion = 0.0;                // ciphertext_top / plaintext
};

struct BenchOptions {
  he::HEParams params = he::HEParams::desk();
  std::size_t trials = 30;
  std::size_t warmup = 3;
  std::size_t remote_trials = 5;
  std::uint64_t seed = 42;
  // When set, remote rows are measured against this service; when empty or
  // unreachable, the report simply has no remote rows.
  std::string server_url;
  std::string token;
  std::string model_id = "cnn-sigmoid-dense";
  // Parameter sets the size table covers.
  std::vector<he::HEParams> size_profiles = {he::HEParams::desk(),
                                             he::HEParams::desk_wide()};
};

struct BenchReport {
  std::string params_label;
  std::vector<OpRow> ops;
  std::vector<SizeRow> sizes;
};

// Times the primitive operations (encrypt, decrypt, add, add_plain, mul,
// mul_plain) and a full single-window inference, locally and — when a
// server is reachable — across the wire. Also measures object sizes for
// the standard parameter sets.
BenchReport run_bench(const BenchOptions& options);

// Size table only (used when timings are not wanted).
std::vector<SizeRow> measure_sizes(const std::vector<he::HEParams>& params,
                                   std::uint64_t seed);

std::string bench_table(const BenchReport& report);
nlohmann::json bench_json(const BenchReport& report);

}  // namespace edls::bench

#endif  // EDLS_BENCH_BENCH_HPP
