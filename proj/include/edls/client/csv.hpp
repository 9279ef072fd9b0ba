// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_CLIENT_CSV_HPP
#define EDLS_CLIENT_CSV_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace edls::client {

// A rectangular CSV table: one header row, then data rows of the same
// width. Values are kept as strings; typing happens during wrangling.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // Errc::unknown_column
};

// RFC-4180 style: fields may be double-quoted, quotes escape as "".
// Ragged rows raise Errc::bad_value; a missing file Errc::not_found.
Table parse_csv(const std::string& text);
Table read_csv(const std::filesystem::path& path);

std::string csv_text(const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

}  // namespace edls::client

#endif  // EDLS_CLIENT_CSV_HPP
