// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_CLIENT_SYNTH_HPP
#define EDLS_CLIENT_SYNTH_HPP

#include <cstddef>
#include <cstdint>

#include "edls/client/csv.hpp"
#include "edls/client/wrangle.hpp"

namespace edls::client {

// Synthetic dairy-herd telemetry: daily feed intake, a genetics score and
// the breed drive milk yield through a noisy linear relation. Deterministic
// for a fixed seed, so tests and benchmarks see identical data.
//
// Columns: feed_kg, genetics_index, breed, milk_yield.
Table synth_table(std::size_t rows, std::uint64_t seed);

// The matching preprocessing spec: feed and genetics min-max normalized,
// breed one-hot over {holstein, jersey, ayrshire}, milk_yield as target.
// Five features per timestep.
WrangleSpec default_synth_spec(std::uint32_t window_length);

}  // namespace edls::client

#endif  // EDLS_CLIENT_SYNTH_HPP
