// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/service/registry.hpp"

#include <algorithm>

#include "edls/nn/model_io.hpp"

namespace edls::service {

void ModelRegistry::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    raise(Errc::store_error, "model directory missing: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    Entry entry;
    entry.graph = nn::load_model(path);  // throws model_format on bad files
    entry.id = entry.graph.name;
    entry.path = path;
    entry.depth = entry.graph.depth_budget();
    if (find(entry.id))
      raise(Errc::store_error, "duplicate model id: " + entry.id);
    entries_.push_back(std::move(entry));
  }
}

const ModelRegistry::Entry* ModelRegistry::find(const std::string& id) const {
  for (const auto& entry : entries_)
    if (entry.id == id) return &entry;
  return nullptr;
}

}  // namespace edls::service
