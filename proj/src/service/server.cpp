// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/service/server.hpp"

#include <cstdio>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "edls/error.hpp"
#include "edls/he/backend.hpp"
#include "edls/nn/graph.hpp"
#include "edls/wire/record.hpp"

namespace edls::service {

using nlohmann::json;

namespace {

int status_for(Errc code) {
  switch (code) {
    case Errc::bad_frame:
    case Errc::checksum_mismatch:
    case Errc::version_unsupported:
    case Errc::secret_key_forbidden:
    case Errc::model_format:
    case Errc::invalid_params:
      return 400;
    case Errc::unauthorized:
      return 401;
    case Errc::not_found:
      return 404;
    case Errc::out_of_levels:
    case Errc::level_mismatch:
      return 409;
    case Errc::payload_too_large:
      return 413;
    case Errc::queue_full:
      return 503;
    default:
      return 500;
  }
}

void reply_json(httplib::Response& res, int status, const json& j) {
  res.status = status;
  res.set_content(j.dump(2), "application/json");
}

void reply_error(httplib::Response& res, int status,
                 const std::string& message) {
  reply_json(res, status, json{{"error", message}});
}

// Wraps a handler body so thrown Errors become their HTTP status and
// anything else a 500, keeping per-route code linear.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    reply_error(res, status_for(e.code()), e.what());
  } catch (const std::exception& e) {
    reply_error(res, 500, std::string("internal error: ") + e.what());
  }
}

json dataset_info_json(const DatasetInfo& info) {
  json j{{"dataset_id", info.id},
         {"dataset_name", info.meta.dataset_name},
         {"owner", info.meta.owner},
         {"received_at", info.received_at},
         {"window_count", info.meta.window_count},
         {"window_length", info.meta.window_length},
         {"n_features", info.meta.n_features},
         {"level", info.level},
         {"ciphertext_count", info.ciphertext_count},
         {"byte_size", info.byte_size}};
  return j;
}

json job_json(const JobRecord& job, bool result_ready) {
  json j{{"job_id", job.job_id},       {"dataset_id", job.dataset_id},
         {"model_id", job.model_id},   {"status", job.status},
         {"created_at", job.created_at}, {"finished_at", job.finished_at},
         {"result_ready", result_ready}};
  if (!job.error.empty()) j["error"] = job.error;
  return j;
}

}  // namespace

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      store_(config_.store_dir),
      http_(std::make_unique<httplib::Server>()) {
  if (!config_.model_dir.empty()) registry_.load_directory(config_.model_dir);
  route();
}

Service::~Service() { stop(); }

bool Service::authorized(const std::string& header) const {
  return header == "Bearer " + config_.token && !config_.token.empty();
}

void Service::route() {
  http_->set_payload_max_length(config_.max_body_bytes);

  http_->set_pre_routing_handler(
      [this](const httplib::Request& req, httplib::Response& res) {
        if (req.path == "/healthz")
          return httplib::Server::HandlerResponse::Unhandled;
        if (!authorized(req.get_header_value("Authorization"))) {
          reply_error(res, 401, "missing or wrong bearer token");
          return httplib::Server::HandlerResponse::Handled;
        }
        return httplib::Server::HandlerResponse::Unhandled;
      });

  if (config_.log_requests) {
    http_->set_logger([](const httplib::Request& req,
                         const httplib::Response& res) {
      std::fprintf(stderr, "%s %s -> %d (%zu bytes)\n", req.method.c_str(),
                   req.path.c_str(), res.status, res.body.size());
    });
  }

  http_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, json{{"status", "ok"}});
  });

  http_->Get("/models", [this](const httplib::Request&,
                               httplib::Response& res) {
    guarded(res, [&] {
      json out = json::array();
      for (const auto& entry : registry_.entries())
        out.push_back(json{{"model_id", entry.id},
                           {"window_length", entry.graph.window_length},
                           {"n_features", entry.graph.n_features},
                           {"depth", entry.depth}});
      reply_json(res, 200, out);
    });
  });

  http_->Post("/datasets", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    guarded(res, [&] {
      const wire::Bytes bytes(req.body.begin(), req.body.end());
      // Full validation: frame integrity, parameter consistency, reduced
      // coefficients, and the no-secret-key transmission policy.
      const wire::EncryptedRecord record =
          wire::deserialize_record(bytes, wire::RecordMode::transmission);
      if (!record.relin_key)
        raise(Errc::bad_frame,
              "record lacks the evaluation key needed for inference");
      const std::size_t expected =
          std::size_t{record.meta.window_count} * record.meta.window_length;
      if (expected == 0 || record.ciphertexts.size() != expected)
        raise(Errc::bad_frame,
              "ciphertext count does not match the declared windows");
      const int level = record.ciphertexts[0].level;
      for (const auto& ct : record.ciphertexts)
        if (ct.level != level)
          raise(Errc::bad_frame, "ciphertexts sit at mixed levels");

      DatasetInfo info;
      info.meta = record.meta;
      info.level = level;
      info.ciphertext_count = record.ciphertexts.size();
      const std::string id = store_.put_dataset(bytes, info);
      reply_json(res, 201, json{{"dataset_id", id}});
    });
  });

  http_->Get("/datasets", [this](const httplib::Request& req,
                                 httplib::Response& res) {
    guarded(res, [&] {
      const std::string owner = req.get_param_value("owner");
      json out = json::array();
      for (const auto& info : store_.list_datasets(owner))
        out.push_back(dataset_info_json(info));
      reply_json(res, 200, out);
    });
  });

  http_->Get("/datasets/:id", [this](const httplib::Request& req,
                                     httplib::Response& res) {
    guarded(res, [&] {
      const auto info = store_.dataset_info(req.path_params.at("id"));
      if (!info) raise(Errc::not_found, "no such dataset");
      reply_json(res, 200, dataset_info_json(*info));
    });
  });

  http_->Post("/inferences", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    guarded(res, [&] {
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception&) {
        raise(Errc::bad_frame, "request body must be JSON");
      }
      const std::string dataset_id = body.value("dataset_id", "");
      const std::string model_id = body.value("model_id", "");
      const auto info = store_.dataset_info(dataset_id);
      if (!info) raise(Errc::not_found, "no such dataset: " + dataset_id);
      const auto* model = registry_.find(model_id);
      if (!model) raise(Errc::not_found, "no such model: " + model_id);

      // Pre-checks before anything is queued: the job must be able to run.
      if (model->graph.window_length != info->meta.window_length ||
          model->graph.n_features != info->meta.n_features)
        raise(Errc::level_mismatch,
              "model geometry does not match the dataset windows");
      if (info->level < model->depth)
        raise(Errc::out_of_levels,
              "dataset ciphertexts at level " + std::to_string(info->level) +
                  " cannot absorb a depth-" + std::to_string(model->depth) +
                  " model");

      JobRecord job;
      job.job_id = store_.new_job_id();
      job.dataset_id = dataset_id;
      job.model_id = model_id;
      job.status = "queued";
      job.created_at = now_iso8601();
      store_.put_job(job);
      enqueue(job.job_id);
      reply_json(res, 201, json{{"job_id", job.job_id}, {"status", "queued"}});
    });
  });

  http_->Get("/inferences/:id", [this](const httplib::Request& req,
                                       httplib::Response& res) {
    guarded(res, [&] {
      const auto job = store_.job(req.path_params.at("id"));
      if (!job) raise(Errc::not_found, "no such job");
      const bool ready = store_.result_bytes(job->job_id).has_value();
      reply_json(res, 200, job_json(*job, ready));
    });
  });

  http_->Get("/inferences/:id/result", [this](const httplib::Request& req,
                                              httplib::Response& res) {
    guarded(res, [&] {
      const auto job = store_.job(req.path_params.at("id"));
      if (!job) raise(Errc::not_found, "no such job");
      if (job->status == "failed")
        reply_json(res, 409, job_json(*job, false));
      else if (const auto bytes = store_.result_bytes(job->job_id)) {
        res.status = 200;
        res.set_content(
            std::string(bytes->begin(), bytes->end()),
            "application/octet-stream");
      } else {
        reply_json(res, 409, job_json(*job, false));
      }
    });
  });
}

int Service::start() {
  if (config_.port == 0) {
    port_ = http_->bind_to_any_port(config_.host);
    if (port_ <= 0) raise(Errc::store_error, "cannot bind an ephemeral port");
  } else {
    if (!http_->bind_to_port(config_.host, config_.port))
      raise(Errc::store_error,
            "cannot bind " + config_.host + ":" +
                std::to_string(config_.port));
    port_ = config_.port;
  }
  listen_thread_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
  worker_ = std::thread([this] { worker_loop(); });
  return port_;
}

void Service::stop() {
  {
    std::lock_guard lock(queue_mutex_);
    if (stopping_) return;
    stopping_ = true;
  }
  queue_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
  if (http_) http_->stop();
  if (listen_thread_.joinable()) listen_thread_.join();
}

void Service::enqueue(const std::string& job_id) {
  {
    std::lock_guard lock(queue_mutex_);
    if (queue_.size() >= config_.queue_capacity)
      raise(Errc::queue_full, "inference queue is full, retry later");
    queue_.push_back(job_id);
  }
  queue_cv_.notify_one();
}

void Service::worker_loop() {
  for (;;) {
    std::string job_id;
    {
      std::unique_lock lock(queue_mutex_);
      queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_ && queue_.empty()) return;
      job_id = queue_.front();
      queue_.pop_front();
    }
    run_job(job_id);
  }
}

void Service::run_job(const std::string& job_id) {
  auto maybe_job = store_.job(job_id);
  if (!maybe_job) return;
  JobRecord job = *maybe_job;
  job.status = "running";
  store_.put_job(job);
  try {
    const wire::Bytes bytes = store_.dataset_bytes(job.dataset_id);
    const wire::EncryptedRecord record =
        wire::deserialize_record(bytes, wire::RecordMode::transmission);
    const auto* model = registry_.find(job.model_id);
    if (!model) raise(Errc::not_found, "model disappeared: " + job.model_id);
    if (!record.relin_key)
      raise(Errc::bad_frame, "record lacks evaluation keys");

    const auto ctx = he::Context::create(record.params);
    const he::HeBackend backend(ctx, *record.relin_key);
    std::optional<std::size_t> sentinel;
    if (record.meta.sentinel_slot) sentinel = *record.meta.sentinel_slot;

    wire::EncryptedRecord result;
    result.params = record.params;
    result.meta = record.meta;
    result.meta.created_at = now_iso8601();
    result.meta.window_length = 1;  // one ciphertext per window
    result.meta.model_id = job.model_id;
    if (record.meta.sentinel_slot)
      result.meta.sentinel_expected =
          nn::sentinel_forward(model->graph, record.meta.sentinel_value);

    const std::size_t steps = record.meta.window_length;
    for (std::uint32_t w = 0; w < record.meta.window_count; ++w) {
      const std::span<const he::Ciphertext> window(
          record.ciphertexts.data() + std::size_t{w} * steps, steps);
      he::Ciphertext out = nn::forward(model->graph, backend, window, sentinel);
      // Results travel at the bottom of the chain: smallest possible
      // ciphertexts, nothing left to compute on them anyway.
      result.ciphertexts.push_back(backend.mod_switch_to(out, 0));
    }
    store_.put_result(job_id, wire::serialize_record(
                                  result, wire::RecordMode::transmission));
    job.status = "done";
    job.error.clear();
  } catch (const std::exception& e) {
    job.status = "failed";
    job.error = e.what();
  }
  job.finished_at = now_iso8601();
  store_.put_job(job);
}

}  // namespace edls::service
