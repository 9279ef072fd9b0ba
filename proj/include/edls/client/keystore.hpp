// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_CLIENT_KEYSTORE_HPP
#define EDLS_CLIENT_KEYSTORE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "edls/he/keys.hpp"
#include "edls/he/params.hpp"

namespace edls::client {

// Per-dataset key material on the client's disk. This is the only place a
// secret key is ever written: transmission records refuse to carry one, so
// losing this directory means losing the ability to decrypt results.
//
// Layout: <root>/<dataset>/keys.edls, a local-mode frame holding the
// parameters and the full key bundle.
class KeyStore {
 public:
  explicit KeyStore(std::filesystem::path root);

  bool exists(const std::string& dataset_name) const;
  void save(const std::string& dataset_name, const he::HEParams& params,
            const he::KeyBundle& keys) const;

  struct Entry {
    he::HEParams params;
    he::KeyBundle keys;
  };
  // Throws Errc::cannot_decrypt when no keys were ever stored for the
  // dataset — the caller cannot do anything with an encrypted result.
  Entry load(const std::string& dataset_name) const;

  std::vector<std::string> list() const;
  const std::filesystem::path& root() const { return root_; }

  // Dataset names become directory names; anything outside [A-Za-z0-9._-]
  // maps to '_' so a hostile name cannot escape the root.
  static std::string sanitize(const std::string& dataset_name);

 private:
  std::filesystem::path entry_path(const std::string& dataset_name) const;

  std::filesystem::path root_;
};

}  // namespace edls::client

#endif  // EDLS_CLIENT_KEYSTORE_HPP
