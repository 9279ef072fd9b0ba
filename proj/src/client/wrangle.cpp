// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/client/wrangle.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <nlohmann/json.hpp>

#include "edls/error.hpp"

namespace edls::client {

using nlohmann::json;

std::size_t WrangleSpec::feature_count() const {
  std::size_t n = numeric.size();
  for (const auto& cat : categorical) n += cat.categories.size();
  return n;
}

std::vector<std::string> WrangleSpec::feature_names() const {
  std::vector<std::string> names;
  for (const auto& num : numeric) names.push_back(num.name);
  for (const auto& cat : categorical)
    for (const auto& value : cat.categories)
      names.push_back(cat.name + "=" + value);
  return names;
}

void WrangleSpec::validate() const {
  if (window_length == 0)
    raise(Errc::invalid_params, "window_length must be positive");
  if (feature_count() == 0)
    raise(Errc::invalid_params, "spec selects no feature columns");
  if (target.name.empty())
    raise(Errc::invalid_params, "spec names no target column");
  for (const auto& num : numeric)
    if (!(num.max > num.min))
      raise(Errc::invalid_params,
            "numeric column '" + num.name + "' has an empty range");
  if (!(target.max > target.min))
    raise(Errc::invalid_params, "target column has an empty range");
  for (const auto& cat : categorical)
    if (cat.categories.empty())
      raise(Errc::invalid_params,
            "categorical column '" + cat.name + "' lists no categories");
}

json wrangle_spec_to_json(const WrangleSpec& spec) {
  json numeric = json::array();
  for (const auto& num : spec.numeric)
    numeric.push_back(
        json{{"name", num.name}, {"min", num.min}, {"max", num.max}});
  json categorical = json::array();
  for (const auto& cat : spec.categorical)
    categorical.push_back(
        json{{"name", cat.name}, {"categories", cat.categories}});
  return json{{"format", "edls-wrangle"},
              {"version", 1},
              {"numeric", numeric},
              {"categorical", categorical},
              {"target",
               json{{"name", spec.target.name},
                    {"min", spec.target.min},
                    {"max", spec.target.max}}},
              {"window_length", spec.window_length},
              {"clamp", spec.clamp}};
}

WrangleSpec wrangle_spec_from_json(const json& j) {
  try {
    if (j.value("format", "") != "edls-wrangle")
      raise(Errc::model_format, "not a wrangle spec document");
    if (j.value("version", 0) != 1)
      raise(Errc::version_unsupported, "unknown wrangle spec version");
    WrangleSpec spec;
    for (const auto& num : j.at("numeric"))
      spec.numeric.push_back({num.at("name").get<std::string>(),
                              num.at("min").get<double>(),
                              num.at("max").get<double>()});
    for (const auto& cat : j.at("categorical"))
      spec.categorical.push_back(
          {cat.at("name").get<std::string>(),
           cat.at("categories").get<std::vector<std::string>>()});
    const auto& target = j.at("target");
    spec.target = {target.at("name").get<std::string>(),
                   target.at("min").get<double>(),
                   target.at("max").get<double>()};
    spec.window_length = j.at("window_length").get<std::uint32_t>();
    spec.clamp = j.value("clamp", true);
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    raise(Errc::model_format, std::string("malformed wrangle spec: ") +
                                  e.what());
  }
}

void save_wrangle_spec(const std::filesystem::path& path,
                       const WrangleSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::store_error, "cannot write " + path.string());
  out << wrangle_spec_to_json(spec).dump(2) << '\n';
}

WrangleSpec load_wrangle_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(Errc::model_format, std::string("malformed wrangle spec: ") +
                                  e.what());
  }
  return wrangle_spec_from_json(j);
}

namespace {

double parse_number(const std::string& cell, const std::string& column,
                    std::size_t row) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    raise(Errc::bad_value, "row " + std::to_string(row) + " column '" +
                               column + "': '" + cell +
                               "' is not a number");
  return value;
}

double normalize(double value, double min, double max, bool clamp,
                 const std::string& column, std::size_t row) {
  if (value < min || value > max) {
    if (!clamp)
      raise(Errc::out_of_range,
            "row " + std::to_string(row) + " column '" + column + "': " +
                std::to_string(value) + " outside [" + std::to_string(min) +
                ", " + std::to_string(max) + "]");
    value = std::clamp(value, min, max);
  }
  return (value - min) / (max - min);
}

}  // namespace

WrangledData wrangle(const Table& table, const WrangleSpec& spec) {
  spec.validate();
  const std::size_t T = spec.window_length;
  if (table.rows.size() < T)
    raise(Errc::out_of_range,
          "need at least " + std::to_string(T) + " rows, got " +
              std::to_string(table.rows.size()));

  // Resolve all columns up front so a typo fails before any work.
  std::vector<std::size_t> numeric_cols;
  for (const auto& num : spec.numeric)
    numeric_cols.push_back(table.column(num.name));
  std::vector<std::size_t> categorical_cols;
  for (const auto& cat : spec.categorical)
    categorical_cols.push_back(table.column(cat.name));
  const std::size_t target_col = table.column(spec.target.name);

  const std::size_t F = spec.feature_count();
  std::vector<std::vector<double>> feature_rows(table.rows.size());
  std::vector<double> target_rows(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    auto& features = feature_rows[r];
    features.reserve(F);
    for (std::size_t i = 0; i < spec.numeric.size(); ++i) {
      const auto& num = spec.numeric[i];
      const double raw = parse_number(row[numeric_cols[i]], num.name, r);
      features.push_back(
          normalize(raw, num.min, num.max, spec.clamp, num.name, r));
    }
    for (std::size_t i = 0; i < spec.categorical.size(); ++i) {
      const auto& cat = spec.categorical[i];
      const std::string& cell = row[categorical_cols[i]];
      const auto it =
          std::find(cat.categories.begin(), cat.categories.end(), cell);
      if (it == cat.categories.end())
        raise(Errc::bad_value, "row " + std::to_string(r) + " column '" +
                                   cat.name + "': unknown category '" +
                                   cell + "'");
      for (const auto& value : cat.categories)
        features.push_back(value == cell ? 1.0 : 0.0);
    }
    const double raw_target =
        parse_number(row[target_col], spec.target.name, r);
    target_rows[r] = normalize(raw_target, spec.target.min, spec.target.max,
                               spec.clamp, spec.target.name, r);
  }

  WrangledData data;
  data.feature_names = spec.feature_names();
  const std::size_t window_count = table.rows.size() - T + 1;
  data.windows.reserve(window_count);
  data.targets.reserve(window_count);
  for (std::size_t w = 0; w < window_count; ++w) {
    nn::Window window(feature_rows.begin() + w, feature_rows.begin() + w + T);
    data.windows.push_back(std::move(window));
    data.targets.push_back(target_rows[w + T - 1]);
  }
  return data;
}

}  // namespace edls::client
