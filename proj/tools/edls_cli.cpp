// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line client for the encrypted inference pipeline. Subcommands
// mirror the data flow: synth -> wrangle -> (train) -> encrypt -> submit ->
// infer -> fetch -> decrypt, plus keygen, models and bench.

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "edls/bench/bench.hpp"
#include "edls/client/actions.hpp"
#include "edls/client/csv.hpp"
#include "edls/client/keystore.hpp"
#include "edls/client/synth.hpp"
#include "edls/client/wrangle.hpp"
#include "edls/error.hpp"
#include "edls/nn/model_io.hpp"
#include "edls/nn/train.hpp"
#include "edls/rng.hpp"
#include "edls/wire/record.hpp"

namespace {

using edls::Errc;
using edls::raise;
using nlohmann::json;

edls::he::HEParams params_by_name(const std::string& name,
                                  bool allow_insecure) {
  if (name == "desk") return edls::he::HEParams::desk();
  if (name == "desk-wide") return edls::he::HEParams::desk_wide();
  if (name == "insecure-test" || name == "insecure-test-deep") {
    if (!allow_insecure)
      raise(Errc::invalid_params,
            "'" + name + "' has a toy ring degree with no security margin; "
            "pass --allow-insecure if this is really just a test");
    return name == "insecure-test"
               ? edls::he::HEParams::insecure_test()
               : edls::he::HEParams::insecure_test_deep();
  }
  raise(Errc::invalid_params,
        "unknown parameter preset '" + name +
            "' (choose desk, desk-wide, insecure-test, insecure-test-deep)");
}

std::uint64_t pick_seed(std::uint64_t seed_flag) {
  if (seed_flag != 0) return seed_flag;
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

json windows_to_json(const edls::client::WrangledData& data) {
  return json{{"format", "edls-windows"},
              {"version", 1},
              {"feature_names", data.feature_names},
              {"windows", data.windows},
              {"targets", data.targets}};
}

edls::client::WrangledData windows_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, "cannot open " + path);
  json j;
  try {
    in >> j;
    if (j.value("format", "") != "edls-windows")
      raise(Errc::model_format, path + " is not a windows file");
    edls::client::WrangledData data;
    data.feature_names =
        j.at("feature_names").get<std::vector<std::string>>();
    data.windows = j.at("windows").get<std::vector<edls::nn::Window>>();
    data.targets = j.at("targets").get<std::vector<double>>();
    return data;
  } catch (const json::exception& e) {
    raise(Errc::model_format,
          std::string("malformed windows file: ") + e.what());
  }
}

void write_bytes(const std::string& path, const edls::wire::Bytes& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::store_error, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::store_error, "short write to " + path);
}

edls::wire::Bytes read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, "cannot open " + path);
  return edls::wire::Bytes((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"encrypted deep-learning service, client side"};
  app.require_subcommand(1);

  std::string server = "http://127.0.0.1:8470";
  std::string token;
  app.add_option("--server", server, "service base URL")
      ->envname("EDLS_SERVER");
  app.add_option("--token", token, "bearer token")->envname("EDLS_TOKEN");
  auto remote = [&] { return edls::client::Remote{server, token}; };

  // --- synth ---------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "generate synthetic telemetry");
  std::size_t synth_rows = 64;
  std::uint64_t synth_seed = 7;
  std::uint32_t synth_window = 3;
  std::string synth_out = "data.csv";
  std::string synth_spec_out;
  synth->add_option("--rows", synth_rows, "rows to generate");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--window", synth_window, "window length for the spec");
  synth->add_option("--out", synth_out, "CSV output path");
  synth->add_option("--spec-out", synth_spec_out,
                    "also write the matching wrangle spec here");

  // --- wrangle -------------------------------------------------------------
  auto* wrangle = app.add_subcommand("wrangle", "normalize and window a CSV");
  std::string wr_data, wr_spec, wr_out = "windows.json";
  wrangle->add_option("--data", wr_data, "input CSV")->required();
  wrangle->add_option("--spec", wr_spec, "wrangle spec JSON")->required();
  wrangle->add_option("--out", wr_out, "windows output path");

  // --- train ---------------------------------------------------------------
  auto* train = app.add_subcommand(
      "train", "fit the conv-sigmoid-dense model on plaintext windows");
  std::string tr_windows, tr_out = "model.json", tr_name = "cnn-sigmoid-dense";
  std::size_t tr_epochs = 200;
  double tr_lr = 0.05;
  bool tr_true_sigmoid = false;
  train->add_option("--windows", tr_windows, "windows file")->required();
  train->add_option("--out", tr_out, "model output path");
  train->add_option("--name", tr_name, "model id");
  train->add_option("--epochs", tr_epochs, "training epochs");
  train->add_option("--lr", tr_lr, "learning rate");
  train->add_flag("--true-sigmoid", tr_true_sigmoid,
                  "train against the exact sigmoid (model then cannot run "
                  "encrypted until switched back)");

  // --- keygen / encrypt ----------------------------------------------------
  std::string keystore_dir = "keystore";
  app.add_option("--keystore", keystore_dir, "client key directory")
      ->envname("EDLS_KEYSTORE");

  auto* keygen = app.add_subcommand("keygen", "generate keys for a dataset");
  std::string kg_dataset, kg_params = "desk";
  std::uint64_t kg_seed = 0;
  bool kg_allow_insecure = false;
  keygen->add_option("--dataset", kg_dataset, "dataset name")->required();
  keygen->add_option("--params", kg_params, "parameter preset");
  keygen->add_option("--seed", kg_seed, "RNG seed (0 = random)");
  keygen->add_flag("--allow-insecure", kg_allow_insecure,
                   "permit toy parameter presets");

  auto* encrypt = app.add_subcommand("encrypt", "encrypt windows");
  std::string en_windows, en_dataset, en_owner = "anonymous";
  std::string en_params = "desk", en_out = "record.edls";
  std::uint64_t en_seed = 0;
  bool en_allow_insecure = false;
  encrypt->add_option("--windows", en_windows, "windows file")->required();
  encrypt->add_option("--dataset", en_dataset, "dataset name")->required();
  encrypt->add_option("--owner", en_owner, "owner label");
  encrypt->add_option("--params", en_params, "parameter preset");
  encrypt->add_option("--out", en_out, "record output path (transmission "
                                       "form, never contains the secret "
                                       "key)");
  encrypt->add_option("--seed", en_seed, "RNG seed (0 = random)");
  encrypt->add_flag("--allow-insecure", en_allow_insecure,
                    "permit toy parameter presets");

  // --- remote --------------------------------------------------------------
  auto* models = app.add_subcommand("models", "list models the service runs");

  auto* submit = app.add_subcommand("submit", "upload an encrypted record");
  std::string su_record = "record.edls";
  submit->add_option("--record", su_record, "record path");

  auto* infer = app.add_subcommand("infer", "request encrypted inference");
  std::string in_dataset, in_model = "cnn-sigmoid-dense";
  bool in_wait = false;
  std::size_t in_timeout_s = 600;
  infer->add_option("--dataset-id", in_dataset, "server dataset id")
      ->required();
  infer->add_option("--model", in_model, "model id");
  infer->add_flag("--wait", in_wait, "poll until the job finishes");
  infer->add_option("--timeout", in_timeout_s, "wait timeout, seconds");

  auto* fetch = app.add_subcommand("fetch", "download a finished result");
  std::string fe_job, fe_out = "result.edls";
  fetch->add_option("--job", fe_job, "job id")->required();
  fetch->add_option("--out", fe_out, "result output path");

  auto* decrypt = app.add_subcommand("decrypt", "decrypt a result record");
  std::string de_result = "result.edls";
  bool de_json = false;
  decrypt->add_option("--result", de_result, "result record path");
  decrypt->add_flag("--json", de_json, "machine-readable output");

  // --- bench ---------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "time primitives and inference");
  std::string be_params = "desk", be_json_out;
  std::size_t be_trials = 30;
  bool be_allow_insecure = false, be_remote = false;
  bench->add_option("--params", be_params, "parameter preset");
  bench->add_option("--trials", be_trials, "trials per operation");
  bench->add_option("--json-out", be_json_out, "also write JSON here");
  bench->add_flag("--remote", be_remote,
                  "include remote rows against --server");
  bench->add_flag("--allow-insecure", be_allow_insecure,
                  "permit toy parameter presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const edls::client::Table table =
          edls::client::synth_table(synth_rows, synth_seed);
      edls::client::write_csv(synth_out, table);
      std::printf("wrote %zu rows to %s\n", table.rows.size(),
                  synth_out.c_str());
      if (!synth_spec_out.empty()) {
        edls::client::save_wrangle_spec(
            synth_spec_out, edls::client::default_synth_spec(synth_window));
        std::printf("wrote wrangle spec to %s\n", synth_spec_out.c_str());
      }
    } else if (*wrangle) {
      const auto table = edls::client::read_csv(wr_data);
      const auto spec = edls::client::load_wrangle_spec(wr_spec);
      const auto data = edls::client::wrangle(table, spec);
      std::ofstream out(wr_out, std::ios::binary | std::ios::trunc);
      if (!out) raise(Errc::store_error, "cannot write " + wr_out);
      out << windows_to_json(data).dump(2) << '\n';
      std::printf("wrote %zu windows of %zu x %zu to %s\n",
                  data.windows.size(), std::size_t{spec.window_length},
                  spec.feature_count(), wr_out.c_str());
    } else if (*train) {
      const auto data = windows_from_file(tr_windows);
      if (data.windows.empty())
        raise(Errc::training_state, "no windows to train on");
      edls::nn::ComputeGraph graph = edls::nn::reference_model(
          data.windows[0].size(), data.windows[0][0].size());
      graph.name = tr_name;
      if (tr_true_sigmoid)
        for (auto& layer : graph.layers)
          if (auto* act = std::get_if<edls::nn::ActivationLayer>(&layer))
            act->kind = edls::nn::ActivationKind::sigmoid_true;
      const std::vector<double> curve =
          edls::nn::train(graph, data.windows, data.targets, tr_epochs, tr_lr);
      edls::nn::save_model(graph, tr_out);
      std::printf("mse %.6f -> %.6f over %zu epochs; model written to %s\n",
                  curve.front(), curve.back(), tr_epochs, tr_out.c_str());
    } else if (*keygen) {
      const auto params = params_by_name(kg_params, kg_allow_insecure);
      const edls::client::KeyStore keystore(keystore_dir);
      if (keystore.exists(kg_dataset))
        raise(Errc::invalid_params,
              "dataset '" + kg_dataset + "' already has keys");
      edls::SeededRng rng(pick_seed(kg_seed));
      const auto ctx = edls::he::Context::create(params);
      keystore.save(kg_dataset, params,
                    edls::he::KeyGenerator(ctx).generate(rng));
      std::printf("keys for '%s' stored under %s\n", kg_dataset.c_str(),
                  keystore_dir.c_str());
    } else if (*encrypt) {
      const auto params = params_by_name(en_params, en_allow_insecure);
      const auto data = windows_from_file(en_windows);
      const edls::client::KeyStore keystore(keystore_dir);
      edls::SeededRng rng(pick_seed(en_seed));
      edls::client::EncryptOptions options;
      options.params = params;
      options.dataset_name = en_dataset;
      options.owner = en_owner;
      const edls::wire::EncryptedRecord record = edls::client::encrypt_dataset(
          data.windows, options, keystore, rng);
      write_bytes(en_out,
                  edls::wire::serialize_record(
                      edls::client::strip_secret(record),
                      edls::wire::RecordMode::transmission));
      std::printf("encrypted %u windows (%u ciphertexts) to %s\n",
                  record.meta.window_count,
                  static_cast<unsigned>(record.ciphertexts.size()),
                  en_out.c_str());
    } else if (*models) {
      for (const auto& m : edls::client::list_models(remote()))
        std::printf("%-24s window=%u features=%u depth=%d\n",
                    m.model_id.c_str(), m.window_length, m.n_features,
                    m.depth);
    } else if (*submit) {
      const auto bytes = read_bytes(su_record);
      const auto record = edls::wire::deserialize_record(
          bytes, edls::wire::RecordMode::transmission);
      const std::string id =
          edls::client::upload_dataset(remote(), record);
      std::printf("dataset_id %s\n", id.c_str());
    } else if (*infer) {
      const std::string job =
          edls::client::request_inference(remote(), in_dataset, in_model);
      std::printf("job_id %s\n", job.c_str());
      if (in_wait) {
        const auto status = edls::client::wait_for_job(
            remote(), job, std::chrono::seconds(in_timeout_s));
        std::printf("status %s%s%s\n", status.status.c_str(),
                    status.error.empty() ? "" : ": ",
                    status.error.c_str());
        if (status.status != "done") return 1;
      }
    } else if (*fetch) {
      const auto record = edls::client::fetch_result(remote(), fe_job);
      write_bytes(fe_out,
                  edls::wire::serialize_record(
                      record, edls::wire::RecordMode::transmission));
      std::printf("result written to %s (%u windows)\n", fe_out.c_str(),
                  record.meta.window_count);
    } else if (*decrypt) {
      const auto record = edls::wire::deserialize_record(
          read_bytes(de_result), edls::wire::RecordMode::transmission);
      const edls::client::KeyStore keystore(keystore_dir);
      const auto report = edls::client::decrypt_result(record, keystore);
      if (de_json) {
        const json j{{"model_id", report.model_id},
                     {"predictions", report.predictions},
                     {"sentinel_expected", report.sentinel_expected},
                     {"sentinel_values", report.sentinel_values}};
        std::printf("%s\n", j.dump(2).c_str());
      } else {
        std::printf("model %s, sentinel ok (expected %.4f)\n",
                    report.model_id.c_str(), report.sentinel_expected);
        for (std::size_t i = 0; i < report.predictions.size(); ++i)
          std::printf("window %zu: %.6f\n", i, report.predictions[i]);
      }
    } else if (*bench) {
      edls::bench::BenchOptions options;
      options.params = params_by_name(be_params, be_allow_insecure);
      options.trials = be_trials;
      if (be_remote) {
        options.server_url = server;
        options.token = token;
      }
      const auto report = edls::bench::run_bench(options);
      std::fputs(edls::bench::bench_table(report).c_str(), stdout);
      if (!be_json_out.empty()) {
        std::ofstream out(be_json_out, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::store_error, "cannot write " + be_json_out);
        out << edls::bench::bench_json(report).dump(2) << '\n';
        std::printf("\nJSON written to %s\n", be_json_out.c_str());
      }
    }
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
