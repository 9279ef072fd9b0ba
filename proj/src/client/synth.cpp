// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/client/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>

#include "edls/rng.hpp"

namespace edls::client {

namespace {

constexpr std::array<const char*, 3> kBreeds = {"holstein", "jersey",
                                                "ayrshire"};
constexpr std::array<double, 3> kBreedBonus = {2.0, 0.0, 1.0};

std::string fixed(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

}  // namespace

Table synth_table(std::size_t rows, std::uint64_t seed) {
  SeededRng rng(seed);
  Table table;
  table.header = {"feed_kg", "genetics_index", "breed", "milk_yield"};
  table.rows.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double feed = 2.0 + 18.0 * rng.unit();
    const double genetics = 100.0 * rng.unit();
    const std::size_t breed = r % kBreeds.size();
    // Box-Muller would be overkill; the sum of three uniforms is plenty
    // gaussian-ish for plausible-looking noise.
    const double noise =
        (rng.unit() + rng.unit() + rng.unit() - 1.5) * 1.2;
    double yield = 4.0 + 1.4 * feed + 0.12 * genetics +
                   kBreedBonus[breed] + noise;
    yield = std::clamp(yield, 5.0, 45.0);
    table.rows.push_back({fixed(feed), fixed(genetics),
                          kBreeds[breed], fixed(yield)});
  }
  return table;
}

WrangleSpec default_synth_spec(std::uint32_t window_length) {
  WrangleSpec spec;
  spec.numeric = {{"feed_kg", 2.0, 20.0}, {"genetics_index", 0.0, 100.0}};
  spec.categorical = {
      {"breed", {kBreeds[0], kBreeds[1], kBreeds[2]}}};
  spec.target = {"milk_yield", 5.0, 45.0};
  spec.window_length = window_length;
  spec.clamp = true;
  return spec;
}

}  // namespace edls::client
