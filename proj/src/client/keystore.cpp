// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/client/keystore.hpp"

#include <algorithm>
#include <fstream>

#include "edls/error.hpp"
#include "edls/wire/frame.hpp"
#include "edls/wire/serialize.hpp"

namespace edls::client {

namespace fs = std::filesystem;

KeyStore::KeyStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec)
    raise(Errc::store_error,
          "cannot create keystore at " + root_.string() + ": " + ec.message());
}

std::string KeyStore::sanitize(const std::string& dataset_name) {
  if (dataset_name.empty())
    raise(Errc::invalid_params, "dataset name is empty");
  std::string safe = dataset_name;
  for (char& c : safe) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' ||
                    c == '-';
    if (!ok) c = '_';
  }
  // No ".." anywhere and no leading dot: a name must neither climb out of
  // the root nor hide itself. Interior single dots ("herd.7") are fine.
  for (std::size_t i = 0; i < safe.size(); ++i)
    if (safe[i] == '.' && (i == 0 || safe[i - 1] == '.')) safe[i] = '_';
  return safe;
}

fs::path KeyStore::entry_path(const std::string& dataset_name) const {
  return root_ / sanitize(dataset_name) / "keys.edls";
}

bool KeyStore::exists(const std::string& dataset_name) const {
  std::error_code ec;
  return fs::exists(entry_path(dataset_name), ec);
}

void KeyStore::save(const std::string& dataset_name,
                    const he::HEParams& params,
                    const he::KeyBundle& keys) const {
  const fs::path path = entry_path(dataset_name);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec)
    raise(Errc::store_error, "cannot create " + path.parent_path().string());

  std::vector<wire::Section> sections;
  sections.push_back({wire::tag::params, wire::params_bytes(params)});
  sections.push_back({wire::tag::secret_key,
                      wire::secret_key_bytes(keys.secret)});
  sections.push_back({wire::tag::public_key,
                      wire::public_key_bytes(keys.public_key)});
  sections.push_back({wire::tag::relin_key,
                      wire::relin_key_bytes(keys.relin)});
  const wire::Bytes bytes = wire::build_frame(sections);

  const fs::path tmp = path.parent_path() / ".keys.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::store_error, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(Errc::store_error, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) raise(Errc::store_error, "cannot finalize " + path.string());
}

KeyStore::Entry KeyStore::load(const std::string& dataset_name) const {
  const fs::path path = entry_path(dataset_name);
  std::ifstream in(path, std::ios::binary);
  if (!in)
    raise(Errc::cannot_decrypt,
          "no keys stored for dataset '" + dataset_name +
              "'; without its secret key the result is noise");
  wire::Bytes bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const wire::Frame frame = wire::parse_frame(bytes);

  Entry entry;
  entry.params = wire::params_from_bytes(frame.section(wire::tag::params));
  entry.keys.secret = wire::secret_key_from_bytes(
      frame.section(wire::tag::secret_key), entry.params);
  entry.keys.public_key = wire::public_key_from_bytes(
      frame.section(wire::tag::public_key), entry.params);
  entry.keys.relin = wire::relin_key_from_bytes(
      frame.section(wire::tag::relin_key), entry.params);
  entry.keys.param_id = entry.params.param_id();
  return entry;
}

std::vector<std::string> KeyStore::list() const {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& dir : fs::directory_iterator(root_, ec)) {
    if (!dir.is_directory()) continue;
    std::error_code exists_ec;
    if (fs::exists(dir.path() / "keys.edls", exists_ec))
      names.push_back(dir.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace edls::client
