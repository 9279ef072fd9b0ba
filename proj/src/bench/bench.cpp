// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/bench/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <nlohmann/json.hpp>

#include "edls/client/actions.hpp"
#include "edls/client/keystore.hpp"
#include "edls/error.hpp"
#include "edls/he/backend.hpp"
#include "edls/he/context.hpp"
#include "edls/he/encoder.hpp"
#include "edls/he/encryptor.hpp"
#include "edls/he/evaluator.hpp"
#include "edls/he/keys.hpp"
#include "edls/nn/graph.hpp"
#include "edls/nn/model_io.hpp"
#include "edls/rng.hpp"
#include "edls/wire/serialize.hpp"

namespace edls::bench {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

// Runs `body` reps times per trial and reports per-call seconds. Sub-
// millisecond primitives get batched so the result is not timer jitter.
OpRow time_op(const std::string& op, const std::string& scope,
              std::size_t trials, std::size_t warmup, std::size_t reps,
              const std::function<void()>& body) {
  for (std::size_t i = 0; i < warmup; ++i) body();
  std::vector<double> samples;
  samples.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto begin = Clock::now();
    for (std::size_t r = 0; r < reps; ++r) body();
    const auto end = Clock::now();
    samples.push_back(std::chrono::duration<double>(end - begin).count() /
                      static_cast<double>(reps));
  }
  OpRow row{op, scope, 0.0, 0.0, trials};
  for (const double s : samples) row.mean_s += s;
  row.mean_s /= static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double acc = 0.0;
    for (const double s : samples) acc += (s - row.mean_s) * (s - row.mean_s);
    row.std_s = std::sqrt(acc / static_cast<double>(samples.size() - 1));
  }
  return row;
}

std::string params_label(const he::HEParams& params) {
  std::string label = "N=" + std::to_string(params.degree) + " chain={";
  for (std::size_t i = 0; i < params.chain.size(); ++i) {
    if (i) label += ",";
    label += std::to_string(
        static_cast<int>(std::round(std::log2(double(params.chain[i])))));
  }
  label += "} scale=2^" + std::to_string(static_cast<int>(
                              std::round(std::log2(params.scale))));
  return label;
}

}  // namespace

std::vector<SizeRow> measure_sizes(const std::vector<he::HEParams>& params,
                                   std::uint64_t seed) {
  std::vector<SizeRow> rows;
  for (const auto& p : params) {
    SeededRng rng(seed);
    const auto ctx = he::Context::create(p);
    const he::KeyBundle keys = he::KeyGenerator(ctx).generate(rng);
    const he::Encoder encoder(ctx);
    const he::Encryptor encryptor(ctx, keys.public_key);
    const he::Evaluator evaluator(ctx);

    std::vector<double> slots(p.slot_count());
    for (std::size_t i = 0; i < slots.size(); ++i)
      slots[i] = 0.25 + 0.5 * static_cast<double>(i % 3);
    const he::Plaintext pt = encoder.encode(slots, p.scale, p.top_level());
    const he::Ciphertext top = encryptor.encrypt(pt, rng);
    const he::Ciphertext bottom = evaluator.mod_switch_to(top, 0);

    SizeRow row;
    row.profile = "N" + std::to_string(p.degree);
    row.degree = p.degree;
    row.slot_count = p.slot_count();
    row.plaintext_bytes = slots.size() * sizeof(double);
    row.ciphertext_top_bytes = wire::ciphertext_bytes(top).size();
    row.ciphertext_l0_bytes = wire::ciphertext_bytes(bottom).size();
    row.expansion = static_cast<double>(row.ciphertext_top_bytes) /
                    static_cast<double>(row.plaintext_bytes);
    rows.push_back(row);
  }
  return rows;
}

BenchReport run_bench(const BenchOptions& options) {
  BenchReport report;
  report.params_label = params_label(options.params);

  SeededRng rng(options.seed);
  const auto ctx = he::Context::create(options.params);
  const he::KeyBundle keys = he::KeyGenerator(ctx).generate(rng);
  const he::Encoder encoder(ctx);
  const he::Encryptor encryptor(ctx, keys.public_key);
  const he::Decryptor decryptor(ctx, keys.secret);
  const he::Evaluator evaluator(ctx, keys.relin);

  const int top = options.params.top_level();
  const double scale = options.params.scale;
  const std::size_t slots = options.params.slot_count();

  std::vector<double> values(slots);
  for (std::size_t i = 0; i < slots; ++i)
    values[i] = 0.001 * static_cast<double>(i % 100) - 0.05;
  const he::Plaintext pt = encoder.encode(values, scale, top);
  const he::Ciphertext ct_a = encryptor.encrypt(pt, rng);
  const he::Ciphertext ct_b = encryptor.encrypt(pt, rng);

  report.ops.push_back(time_op(
      "encrypt", "local", options.trials, options.warmup, 1, [&] {
        const he::Plaintext fresh = encoder.encode(values, scale, top);
        (void)encryptor.encrypt(fresh, rng);
      }));
  report.ops.push_back(time_op(
      "decrypt", "local", options.trials, options.warmup, 1, [&] {
        (void)encoder.decode(decryptor.decrypt(ct_a));
      }));
  report.ops.push_back(time_op(
      "add", "local", options.trials, options.warmup, 8, [&] {
        (void)evaluator.add(ct_a, ct_b);
      }));
  report.ops.push_back(time_op(
      "add_plain", "local", options.trials, options.warmup, 8, [&] {
        (void)evaluator.add_plain(ct_a, pt);
      }));
  report.ops.push_back(time_op(
      "mul", "local", options.trials, options.warmup, 2, [&] {
        (void)evaluator.mul(ct_a, ct_b);
      }));
  report.ops.push_back(time_op(
      "mul_plain", "local", options.trials, options.warmup, 2, [&] {
        (void)evaluator.mul_plain(ct_a, pt);
      }));

  // Full single-window inference with the reference model. Uses modest
  // window geometry; what matters is that every layer runs for real. A
  // chain too shallow for the model simply has no inference row.
  if (const nn::ComputeGraph graph = nn::reference_model(3, 5);
      top >= graph.depth_budget()) {
    const he::HeBackend backend(ctx, keys.relin);
    std::vector<he::Ciphertext> window;
    for (std::size_t t = 0; t < graph.window_length; ++t) {
      std::vector<double> step(slots, 0.0);
      for (std::size_t f = 0; f < graph.n_features; ++f)
        step[f] = 0.1 * static_cast<double>(f + t);
      step[slots - 1] = 0.5;
      window.push_back(encryptor.encrypt(encoder.encode(step, scale, top),
                                         rng));
    }
    report.ops.push_back(time_op(
        "inference", "local", options.trials, std::min<std::size_t>(1, options.warmup), 1,
        [&] {
          (void)nn::forward(graph, backend,
                            std::span<const he::Ciphertext>(window),
                            slots - 1);
        }));
  }

  if (!options.server_url.empty()) {
    try {
      const client::Remote remote{options.server_url, options.token};
      (void)client::list_models(remote);  // reachability probe

      // Remote rows reuse the client actions end to end, so they measure
      // what a user actually waits for: serialization, HTTP and the queue.
      const std::filesystem::path key_root =
          std::filesystem::temp_directory_path() /
          ("edls-bench-keys-" + std::to_string(Clock::now()
                                                   .time_since_epoch()
                                                   .count()));
      const client::KeyStore keystore(key_root);
      const nn::ComputeGraph graph = nn::reference_model(3, 5);
      std::vector<nn::Window> windows{nn::Window(
          graph.window_length, std::vector<double>(graph.n_features, 0.3))};
      client::EncryptOptions enc;
      enc.params = options.params;
      enc.dataset_name = "bench";
      enc.owner = "bench";

      report.ops.push_back(time_op(
          "encrypt", "remote", options.remote_trials, 1, 1, [&] {
            const wire::EncryptedRecord record =
                client::encrypt_dataset(windows, enc, keystore, rng);
            (void)client::upload_dataset(remote, record);
          }));

      const wire::EncryptedRecord record =
          client::encrypt_dataset(windows, enc, keystore, rng);
      const std::string dataset_id =
          client::upload_dataset(remote, record);
      std::string last_job;
      report.ops.push_back(time_op(
          "inference", "remote", options.remote_trials, 0, 1, [&] {
            last_job = client::request_inference(remote, dataset_id,
                                                 options.model_id);
            const client::JobStatus done = client::wait_for_job(
                remote, last_job, std::chrono::minutes(10),
                std::chrono::milliseconds(20));
            if (done.status != "done")
              raise(Errc::http_error, "remote inference failed: " +
                                          done.error);
          }));
      const wire::EncryptedRecord result =
          client::fetch_result(remote, last_job);
      report.ops.push_back(time_op(
          "decrypt", "remote", options.remote_trials, 1, 1, [&] {
            (void)client::decrypt_result(result, keystore);
          }));
      std::error_code ec;
      std::filesystem::remove_all(key_root, ec);
    } catch (const Error&) {
      // Server not reachable or not serving the reference model: the
      // report simply carries no remote rows.
    }
  }

  report.sizes = measure_sizes(options.size_profiles, options.seed);
  return report;
}

std::string bench_table(const BenchReport& report) {
  std::string out;
  char line[160];
  out += "parameters: " + report.params_label + "\n\n";
  out += "operation timings (seconds per call)\n";
  std::snprintf(line, sizeof(line), "  %-10s %-7s %12s %12s %7s\n", "op",
                "scope", "mean", "std", "trials");
  out += line;
  for (const auto& row : report.ops) {
    std::snprintf(line, sizeof(line), "  %-10s %-7s %12.6f %12.6f %7zu\n",
                  row.op.c_str(), row.scope.c_str(), row.mean_s, row.std_s,
                  row.trials);
    out += line;
  }
  out += "\nobject sizes (bytes)\n";
  std::snprintf(line, sizeof(line), "  %-8s %7s %7s %11s %11s %11s %10s\n",
                "profile", "degree", "slots", "plaintext", "ct@top", "ct@L0",
                "expansion");
  out += line;
  for (const auto& row : report.sizes) {
    std::snprintf(line, sizeof(line),
                  "  %-8s %7zu %7zu %11zu %11zu %11zu %10.2f\n",
                  row.profile.c_str(), row.degree, row.slot_count,
                  row.plaintext_bytes, row.ciphertext_top_bytes,
                  row.ciphertext_l0_bytes, row.expansion);
    out += line;
  }
  return out;
}

json bench_json(const BenchReport& report) {
  json ops = json::array();
  for (const auto& row : report.ops)
    ops.push_back(json{{"op", row.op},
                       {"scope", row.scope},
                       {"mean_s", row.mean_s},
                       {"std_s", row.std_s},
                       {"trials", row.trials}});
  json sizes = json::array();
  for (const auto& row : report.sizes)
    sizes.push_back(json{{"profile", row.profile},
                         {"degree", row.degree},
                         {"slot_count", row.slot_count},
                         {"plaintext_bytes", row.plaintext_bytes},
                         {"ciphertext_top_bytes", row.ciphertext_top_bytes},
                         {"ciphertext_l0_bytes", row.ciphertext_l0_bytes},
                         {"expansion", row.expansion}});
  return json{{"format", "edls-bench"},
              {"version", 1},
              {"parameters", report.params_label},
              {"ops", ops},
              {"sizes", sizes}};
}

}  // namespace edls::bench
