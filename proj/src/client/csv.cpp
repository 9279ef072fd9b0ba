// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/client/csv.hpp"

#include <fstream>
#include <sstream>

#include "edls/error.hpp"

namespace edls::client {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  raise(Errc::unknown_column, "no column named '" + name + "'");
}

namespace {

// Splits one logical CSV record starting at `pos`. Returns the fields and
// leaves `pos` just past the record's newline. Quoted fields may contain
// commas, newlines and doubled quotes.
std::vector<std::string> take_record(const std::string& text,
                                     std::size_t& pos) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (;;) {
    if (pos >= text.size()) {
      if (quoted) raise(Errc::bad_value, "unterminated quoted field");
      fields.push_back(std::move(field));
      return fields;
    }
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return fields;
    } else if (c == '\r') {
      // swallow; the '\n' (if any) terminates the record
    } else {
      field.push_back(c);
    }
  }
}

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
  if (!needs_quoting(field)) {
    out += field;
    return;
  }
  out.push_back('"');
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

Table parse_csv(const std::string& text) {
  Table table;
  std::size_t pos = 0;
  if (text.empty()) raise(Errc::bad_value, "empty CSV input");
  table.header = take_record(text, pos);
  while (pos < text.size()) {
    auto fields = take_record(text, pos);
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != table.header.size())
      raise(Errc::bad_value,
            "row " + std::to_string(table.rows.size() + 1) + " has " +
                std::to_string(fields.size()) + " fields, header has " +
                std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  return table;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

std::string csv_text(const Table& table) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      append_field(out, row[i]);
    }
    out.push_back('\n');
  };
  emit_row(table.header);
  for (const auto& row : table.rows) emit_row(row);
  return out;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::store_error, "cannot write " + path.string());
  out << csv_text(table);
}

}  // namespace edls::client
