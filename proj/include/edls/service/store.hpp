// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_SERVICE_STORE_HPP
#define EDLS_SERVICE_STORE_HPP

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "edls/wire/record.hpp"

namespace edls::service {

// ISO-8601 UTC timestamp with millisecond resolution.
std::string now_iso8601();

struct DatasetInfo {
  std::string id;
  wire::RecordMeta meta;
  int level = 0;               // chain level of the submitted ciphertexts
  std::size_t ciphertext_count = 0;
  std::uint64_t byte_size = 0;
  std::string received_at;
};

struct JobRecord {
  std::string job_id;
  std::string dataset_id;
  std::string model_id;
  std::string status;  // queued | running | done | failed
  std::string error;
  std::string created_at;
  std::string finished_at;
};

// Directory-backed store for datasets, jobs and results. Every write goes
// through a temp file plus an atomic rename, so a crash can lose at most
// the entry being written, never corrupt an existing one. The constructor
// re-indexes whatever survived a restart.
class FileStore {
 public:
  explicit FileStore(std::filesystem::path root);

  // Returns the new dataset id. The record bytes were already validated by
  // the caller; info captures what the scheduler needs without re-parsing.
  std::string put_dataset(const wire::Bytes& bytes, DatasetInfo info);
  wire::Bytes dataset_bytes(const std::string& id) const;
  std::optional<DatasetInfo> dataset_info(const std::string& id) const;
  // Newest first; optionally filtered by owner.
  std::vector<DatasetInfo> list_datasets(const std::string& owner = "") const;

  std::string new_job_id();
  void put_job(const JobRecord& job);
  std::optional<JobRecord> job(const std::string& id) const;
  std::vector<JobRecord> list_jobs() const;

  void put_result(const std::string& job_id, const wire::Bytes& bytes);
  std::optional<wire::Bytes> result_bytes(const std::string& job_id) const;

  const std::filesystem::path& root() const { return root_; }

 private:
  void write_atomic(const std::filesystem::path& path,
                    const wire::Bytes& bytes) const;
  std::string fresh_id(const char* prefix);
  void reindex();

  std::filesystem::path root_;
  mutable std::mutex mutex_;
  std::vector<DatasetInfo> datasets_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_ = 0;
};

}  // namespace edls::service

#endif  // EDLS_SERVICE_STORE_HPP
