// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_SERVICE_REGISTRY_HPP
#define EDLS_SERVICE_REGISTRY_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "edls/nn/graph.hpp"

namespace edls::service {

// Models the service owns, loaded once at startup from a directory of
// model JSON files. The model id is the graph name; duplicates are a
// configuration error and refuse to start.
class ModelRegistry {
 public:
  ModelRegistry() = default;

  struct Entry {
    std::string id;
    std::filesystem::path path;
    nn::ComputeGraph graph;
    int depth = 0;
  };

  void load_directory(const std::filesystem::path& dir);

  const Entry* find(const std::string& id) const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace edls::service

#endif  // EDLS_SERVICE_REGISTRY_HPP
