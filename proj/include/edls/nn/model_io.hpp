// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_NN_MODEL_IO_HPP
#define EDLS_NN_MODEL_IO_HPP

#include <filesystem>
#include <string>

#include "edls/nn/graph.hpp"

namespace edls::nn {

// JSON model files ("edls-model", version 1). Loading validates the graph
// structurally; anything malformed raises Errc::model_format.
std::string model_to_json(const ComputeGraph& graph);
ComputeGraph model_from_json(const std::string& text);

void save_model(const ComputeGraph& graph, const std::filesystem::path& path);
ComputeGraph load_model(const std::filesystem::path& path);

// The fixed starting architecture: a window-long convolution with scalar
// kernel entries, the cubic sigmoid, and a per-feature dense readout.
ComputeGraph reference_model(std::size_t window_length,
                             std::size_t n_features);

}  // namespace edls::nn

#endif  // EDLS_NN_MODEL_IO_HPP
