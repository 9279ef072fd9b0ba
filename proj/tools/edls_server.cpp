// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0
//
// Inference service daemon. Stores encrypted submissions, evaluates models
// over them with the evaluation keys they carry, and never holds a key
// that could decrypt anything.

#include <csignal>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "edls/error.hpp"
#include "edls/service/server.hpp"

namespace {
volatile std::sig_atomic_t g_stop = 0;
void handle_signal(int) { g_stop = 1; }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"encrypted deep-learning service, server side"};

  edls::service::ServiceConfig config;
  config.store_dir = "store";
  config.model_dir = "models";
  app.add_option("--host", config.host, "bind address");
  app.add_option("--port", config.port, "port (0 = ephemeral)");
  app.add_option("--store", config.store_dir, "dataset/job storage root");
  app.add_option("--models", config.model_dir, "model JSON directory");
  app.add_option("--token", config.token, "required bearer token")
      ->envname("EDLS_TOKEN")
      ->required();
  std::size_t max_body_mib = config.max_body_bytes >> 20;
  app.add_option("--max-body-mb", max_body_mib, "request size limit, MiB");
  app.add_option("--queue", config.queue_capacity, "job queue capacity");
  app.add_flag("--log", config.log_requests, "log requests to stderr");

  CLI11_PARSE(app, argc, argv);
  config.max_body_bytes = max_body_mib << 20;

  try {
    edls::service::Service service(config);
    const int port = service.start();
    std::printf("listening on %s:%d\n", config.host.c_str(), port);
    std::printf("models: %zu, store: %s\n", service.registry().entries().size(),
                config.store_dir.string().c_str());
    std::fflush(stdout);

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop) {
      timespec ts{0, 200'000'000};
      nanosleep(&ts, nullptr);
    }
    std::printf("shutting down\n");
    service.stop();
  } catch (const edls::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", edls::errc_name(e.code()),
                 e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
