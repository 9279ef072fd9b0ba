// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EDLS_SERVICE_SERVER_HPP
#define EDLS_SERVICE_SERVER_HPP

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "edls/service/registry.hpp"
#include "edls/service/store.hpp"

namespace httplib {
class Server;
}

namespace edls::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8470;  // 0 binds an ephemeral port
  std::filesystem::path store_dir;
  std::filesystem::path model_dir;
  std::string token;  // bearer token required on every data endpoint
  std::size_t max_body_bytes = 512ull << 20;
  std::size_t queue_capacity = 16;
  bool log_requests = false;
};

// The inference service. Holds encrypted datasets, runs models over them
// with the evaluation keys the records carry, and never sees a secret key:
// the wire layer rejects any frame containing one before it reaches the
// store.
//
// HTTP surface (all JSON unless noted):
//   GET  /healthz                    liveness (no auth)
//   GET  /models                     model catalogue
//   POST /datasets                   binary record -> {dataset_id}
//   GET  /datasets[?owner=]          submissions, newest first
//   GET  /datasets/<id>              one submission's metadata
//   POST /inferences                 {dataset_id, model_id} -> {job_id}
//   GET  /inferences/<id>            job status
//   GET  /inferences/<id>/result     binary result record (409 until done)
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds, spawns the listener and the worker, returns the bound port.
  int start();
  void stop();

  int port() const { return port_; }
  const FileStore& store() const { return store_; }
  const ModelRegistry& registry() const { return registry_; }

 private:
  void route();
  bool authorized(const std::string& header) const;
  void enqueue(const std::string& job_id);
  void worker_loop();
  void run_job(const std::string& job_id);

  ServiceConfig config_;
  FileStore store_;
  ModelRegistry registry_;
  std::unique_ptr<httplib::Server> http_;
  std::thread listen_thread_;
  std::thread worker_;
  std::mutex queue_mutex_;
  std::condition_variable queue_cv_;
  std::deque<std::string> queue_;
  bool stopping_ = false;
  int port_ = 0;
};

}  // namespace edls::service

#endif  // EDLS_SERVICE_SERVER_HPP
