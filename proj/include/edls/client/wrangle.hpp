// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_CLIENT_WRANGLE_HPP
#define EDLS_CLIENT_WRANGLE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "edls/client/csv.hpp"
#include "edls/nn/train.hpp"

namespace edls::client {

// Declarative preprocessing: which columns become features, how each is
// normalized, and how rows are grouped into fixed-length windows. The spec
// is data, not code, so the exact same transform can be re-run on new
// batches and audited without reading the pipeline.
struct WrangleSpec {
  struct Numeric {
    std::string name;
    double min = 0.0;
    double max = 1.0;  // maps [min, max] -> [0, 1]
  };
  struct Categorical {
    std::string name;
    std::vector<std::string> categories;  // one-hot, in this order
  };
  struct Target {
    std::string name;
    double min = 0.0;
    double max = 1.0;
  };

  std::vector<Numeric> numeric;
  std::vector<Categorical> categorical;
  Target target;
  std::uint32_t window_length = 1;
  // With clamp on, out-of-range numerics saturate at the bounds; off, they
  // raise Errc::out_of_range.
  bool clamp = true;

  std::size_t feature_count() const;
  std::vector<std::string> feature_names() const;
  void validate() const;  // Errc::invalid_params
};

nlohmann::json wrangle_spec_to_json(const WrangleSpec& spec);
WrangleSpec wrangle_spec_from_json(const nlohmann::json& j);
void save_wrangle_spec(const std::filesystem::path& path,
                       const WrangleSpec& spec);
WrangleSpec load_wrangle_spec(const std::filesystem::path& path);

struct WrangledData {
  std::vector<nn::Window> windows;  // [window][timestep][feature], in [0,1]
  std::vector<double> targets;      // one per window, normalized
  std::vector<std::string> feature_names;
};

// Applies the spec to a table. Errors: Errc::unknown_column (missing
// column), Errc::bad_value (non-numeric cell or unknown category),
// Errc::out_of_range (bound violation with clamp off, or too few rows).
WrangledData wrangle(const Table& table, const WrangleSpec& spec);

}  // namespace edls::client

#endif  // EDLS_CLIENT_WRANGLE_HPP
