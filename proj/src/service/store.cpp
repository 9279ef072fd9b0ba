// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/service/store.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "edls/error.hpp"

namespace edls::service {

namespace fs = std::filesystem;
using nlohmann::json;

std::string now_iso8601() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto secs = time_point_cast<seconds>(now);
  const auto millis =
      duration_cast<milliseconds>(now - secs).count();
  const std::time_t t = system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(millis));
  return buf;
}

FileStore::FileStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  for (const char* sub : {"", "datasets", "jobs", "results", "tmp"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec)
      raise(Errc::store_error,
            "cannot create store directory: " + (root_ / sub).string());
  }
  salt_ = std::random_device{}();
  reindex();
}

void FileStore::write_atomic(const fs::path& path,
                             const wire::Bytes& bytes) const {
  const fs::path tmp =
      root_ / "tmp" / (path.filename().string() + ".partial");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::store_error, "cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(Errc::store_error, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) raise(Errc::store_error, "cannot move into place: " + path.string());
}

std::string FileStore::fresh_id(const char* prefix) {
  const std::uint64_t n = ++counter_;
  // Mix a per-process salt so ids do not collide across restarts even if
  // the counter resets.
  const std::uint64_t tail = (salt_ ^ (n * 0x9e3779b97f4a7c15ull)) & 0xffffff;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s-%06" PRIu64 "-%06" PRIx64, prefix, n,
                tail);
  return buf;
}

namespace {

// Dataset index entries persist as JSON sidecars next to the payload, so a
// restart never has to re-parse multi-megabyte records. The metadata block
// reuses the wire encoding rather than inventing a second schema.
json dataset_info_to_json(const DatasetInfo& info) {
  const wire::Bytes meta = wire::meta_bytes(info.meta);
  return json{{"id", info.id},
              {"level", info.level},
              {"ciphertext_count", info.ciphertext_count},
              {"byte_size", info.byte_size},
              {"received_at", info.received_at},
              {"meta", json::parse(meta.begin(), meta.end())}};
}

DatasetInfo dataset_info_from_json(const json& j) {
  DatasetInfo info;
  info.id = j.at("id").get<std::string>();
  info.level = j.at("level").get<int>();
  info.ciphertext_count = j.at("ciphertext_count").get<std::size_t>();
  info.byte_size = j.at("byte_size").get<std::uint64_t>();
  info.received_at = j.at("received_at").get<std::string>();
  const std::string meta = j.at("meta").dump();
  info.meta = wire::meta_from_bytes(
      std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()));
  return info;
}

}  // namespace

void FileStore::reindex() {
  std::lock_guard lock(mutex_);
  datasets_.clear();
  if (!fs::exists(root_ / "datasets")) return;
  for (const auto& entry : fs::directory_iterator(root_ / "datasets")) {
    if (entry.path().extension() != ".json") continue;
    try {
      std::ifstream in(entry.path(), std::ios::binary);
      DatasetInfo info = dataset_info_from_json(json::parse(in));
      // An index entry whose payload is gone is an orphan, not a dataset.
      if (!fs::exists(root_ / "datasets" / (info.id + ".edls"))) continue;
      datasets_.push_back(std::move(info));
    } catch (const json::exception&) {
      // A half-written or foreign file must not take the service down;
      // it is simply not served.
      continue;
    } catch (const Error&) {
      continue;
    }
  }
  std::sort(datasets_.begin(), datasets_.end(),
            [](const DatasetInfo& a, const DatasetInfo& b) {
              return a.received_at > b.received_at;
            });
  counter_ = datasets_.size();
}

std::string FileStore::put_dataset(const wire::Bytes& bytes,
                                   DatasetInfo info) {
  std::lock_guard lock(mutex_);
  const std::string id = fresh_id("ds");
  info.id = id;
  info.byte_size = bytes.size();
  info.received_at = now_iso8601();
  write_atomic(root_ / "datasets" / (id + ".edls"), bytes);
  const std::string index = dataset_info_to_json(info).dump(2);
  write_atomic(root_ / "datasets" / (id + ".json"),
               wire::Bytes(index.begin(), index.end()));
  datasets_.insert(datasets_.begin(), std::move(info));
  return id;
}

wire::Bytes FileStore::dataset_bytes(const std::string& id) const {
  const fs::path path = root_ / "datasets" / (id + ".edls");
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, "no dataset " + id);
  return wire::Bytes{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
}

std::optional<DatasetInfo> FileStore::dataset_info(
    const std::string& id) const {
  std::lock_guard lock(mutex_);
  for (const auto& d : datasets_)
    if (d.id == id) return d;
  return std::nullopt;
}

std::vector<DatasetInfo> FileStore::list_datasets(
    const std::string& owner) const {
  std::lock_guard lock(mutex_);
  std::vector<DatasetInfo> out;
  for (const auto& d : datasets_)
    if (owner.empty() || d.meta.owner == owner) out.push_back(d);
  return out;
}

std::string FileStore::new_job_id() {
  std::lock_guard lock(mutex_);
  return fresh_id("job");
}

namespace {

json job_to_json(const JobRecord& job) {
  return json{{"job_id", job.job_id},         {"dataset_id", job.dataset_id},
              {"model_id", job.model_id},     {"status", job.status},
              {"error", job.error},           {"created_at", job.created_at},
              {"finished_at", job.finished_at}};
}

JobRecord job_from_json(const json& j) {
  JobRecord job;
  job.job_id = j.at("job_id").get<std::string>();
  job.dataset_id = j.at("dataset_id").get<std::string>();
  job.model_id = j.at("model_id").get<std::string>();
  job.status = j.at("status").get<std::string>();
  job.error = j.value("error", "");
  job.created_at = j.value("created_at", "");
  job.finished_at = j.value("finished_at", "");
  return job;
}

}  // namespace

void FileStore::put_job(const JobRecord& job) {
  const std::string text = job_to_json(job).dump(2);
  write_atomic(root_ / "jobs" / (job.job_id + ".json"),
               wire::Bytes(text.begin(), text.end()));
}

std::optional<JobRecord> FileStore::job(const std::string& id) const {
  const fs::path path = root_ / "jobs" / (id + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    return job_from_json(json::parse(in));
  } catch (const json::exception&) {
    raise(Errc::store_error, "corrupt job record " + id);
  }
}

std::vector<JobRecord> FileStore::list_jobs() const {
  std::vector<JobRecord> out;
  for (const auto& entry : fs::directory_iterator(root_ / "jobs")) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    try {
      out.push_back(job_from_json(json::parse(in)));
    } catch (const json::exception&) {
      continue;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const JobRecord& a, const JobRecord& b) {
              return a.created_at > b.created_at;
            });
  return out;
}

void FileStore::put_result(const std::string& job_id,
                           const wire::Bytes& bytes) {
  write_atomic(root_ / "results" / (job_id + ".edls"), bytes);
}

std::optional<wire::Bytes> FileStore::result_bytes(
    const std::string& job_id) const {
  const fs::path path = root_ / "results" / (job_id + ".edls");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return wire::Bytes{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
}

}  // namespace edls::service
