// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "edls/client/actions.hpp"
#include "edls/client/csv.hpp"
#include "edls/client/keystore.hpp"
#include "edls/client/synth.hpp"
#include "edls/client/wrangle.hpp"
#include "edls/he/backend.hpp"
#include "edls/he/context.hpp"
#include "edls/he/encoder.hpp"
#include "edls/he/encryptor.hpp"
#include "edls/nn/model_io.hpp"
#include "edls/service/store.hpp"
#include "edls/wire/frame.hpp"

using namespace edls;
using namespace edls::client;
namespace fs = std::filesystem;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_params;
}

fs::path fresh_dir(const char* stem) {
  const fs::path p =
      fs::temp_directory_path() /
      (std::string(stem) + "-" +
       std::to_string(
           std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(p);
  return p;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double cov = sxy - sx * sy / n;
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  return cov / std::sqrt(vx * vy);
}

}  // namespace

TEST_SUITE_BEGIN("client");

TEST_CASE("csv parsing handles quoting, escapes and line endings") {
  const std::string text =
      "name,note,score\r\n"
      "plain,simple,1\n"
      "\"quoted,comma\",\"say \"\"hi\"\"\",2\n"
      "\"multi\nline\",last,3\n";
  const Table t = parse_csv(text);
  CHECK(t.header == std::vector<std::string>{"name", "note", "score"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][0] == "plain");
  CHECK(t.rows[1][0] == "quoted,comma");
  CHECK(t.rows[1][1] == "say \"hi\"");
  CHECK(t.rows[2][0] == "multi\nline");
  CHECK(t.column("score") == 2);
  CHECK(code_of([&] { (void)t.column("absent"); }) == Errc::unknown_column);

  CHECK(code_of([] { (void)parse_csv("a,b\n1,2,3\n"); }) == Errc::bad_value);
  CHECK(code_of([] { (void)parse_csv("a,b\n\"open,2\n"); }) ==
        Errc::bad_value);
}

TEST_CASE("csv writing round-trips values that need quoting") {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"x,y", "plain"}, {"with \"quotes\"", "line\nbreak"}};
  const Table back = parse_csv(csv_text(t));
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);

  const fs::path dir = fresh_dir("edls-csv");
  write_csv(dir / "t.csv", t);
  const Table from_disk = read_csv(dir / "t.csv");
  CHECK(from_disk.rows == t.rows);
  CHECK(code_of([&] { (void)read_csv(dir / "absent.csv"); }) ==
        Errc::not_found);
  fs::remove_all(dir);
}

TEST_CASE("numeric normalization maps the bounds onto [0, 1]") {
  Table t;
  t.header = {"temp", "y"};
  t.rows = {{"10", "0"}, {"15", "0"}, {"20", "1"}};
  WrangleSpec spec;
  spec.numeric = {{"temp", 10.0, 20.0}};
  spec.target = {"y", 0.0, 1.0};
  spec.window_length = 1;

  const WrangledData data = wrangle(t, spec);
  REQUIRE(data.windows.size() == 3);
  CHECK(data.windows[0][0][0] == doctest::Approx(0.0));
  CHECK(data.windows[1][0][0] == doctest::Approx(0.5));
  CHECK(data.windows[2][0][0] == doctest::Approx(1.0));
  CHECK(data.feature_names == std::vector<std::string>{"temp"});
}

TEST_CASE("categorical columns one-hot in declared order") {
  Table t;
  t.header = {"breed", "y"};
  t.rows = {{"B", "0.5"}};
  WrangleSpec spec;
  spec.categorical = {{"breed", {"A", "B", "C"}}};
  spec.target = {"y", 0.0, 1.0};
  spec.window_length = 1;

  const WrangledData data = wrangle(t, spec);
  REQUIRE(data.windows.size() == 1);
  CHECK(data.windows[0][0] == std::vector<double>{0.0, 1.0, 0.0});
  CHECK(data.feature_names ==
        std::vector<std::string>{"breed=A", "breed=B", "breed=C"});

  t.rows = {{"D", "0.5"}};
  CHECK(code_of([&] { (void)wrangle(t, spec); }) == Errc::bad_value);
}

TEST_CASE("five rows and window length three make three windows") {
  Table t;
  t.header = {"x", "y"};
  for (int i = 1; i <= 5; ++i)
    t.rows.push_back({std::to_string(i), std::to_string(10 * i)});
  WrangleSpec spec;
  spec.numeric = {{"x", 0.0, 10.0}};
  spec.target = {"y", 0.0, 100.0};
  spec.window_length = 3;

  const WrangledData data = wrangle(t, spec);
  REQUIRE(data.windows.size() == 3);  // rows - T + 1
  REQUIRE(data.targets.size() == 3);
  // Window i covers rows i..i+2; the target is the last row's.
  CHECK(data.windows[0][0][0] == doctest::Approx(0.1));
  CHECK(data.windows[0][2][0] == doctest::Approx(0.3));
  CHECK(data.targets[0] == doctest::Approx(0.3));
  CHECK(data.windows[2][2][0] == doctest::Approx(0.5));
  CHECK(data.targets[2] == doctest::Approx(0.5));

  spec.window_length = 6;
  CHECK(code_of([&] { (void)wrangle(t, spec); }) == Errc::out_of_range);
}

TEST_CASE("wrangling reports precise failures") {
  Table t;
  t.header = {"x", "y"};
  t.rows = {{"1", "2"}, {"oops", "3"}};
  WrangleSpec spec;
  spec.numeric = {{"x", 0.0, 10.0}};
  spec.target = {"y", 0.0, 10.0};
  spec.window_length = 1;
  CHECK(code_of([&] { (void)wrangle(t, spec); }) == Errc::bad_value);

  spec.numeric = {{"absent", 0.0, 1.0}};
  CHECK(code_of([&] { (void)wrangle(t, spec); }) == Errc::unknown_column);

  // Out-of-range numerics: clamp on saturates, clamp off raises.
  Table range;
  range.header = {"x", "y"};
  range.rows = {{"42", "1"}};
  spec.numeric = {{"x", 0.0, 10.0}};
  spec.clamp = true;
  const WrangledData clamped = wrangle(range, spec);
  CHECK(clamped.windows[0][0][0] == doctest::Approx(1.0));
  spec.clamp = false;
  CHECK(code_of([&] { (void)wrangle(range, spec); }) == Errc::out_of_range);

  WrangleSpec empty;
  empty.target = {"y", 0.0, 1.0};
  CHECK(code_of([&] { empty.validate(); }) == Errc::invalid_params);
}

TEST_CASE("wrangle specs survive the JSON round-trip") {
  WrangleSpec spec = default_synth_spec(4);
  spec.clamp = false;
  const WrangleSpec back = wrangle_spec_from_json(wrangle_spec_to_json(spec));
  CHECK(back.numeric.size() == spec.numeric.size());
  CHECK(back.numeric[0].name == spec.numeric[0].name);
  CHECK(back.numeric[0].min == spec.numeric[0].min);
  CHECK(back.categorical[0].categories == spec.categorical[0].categories);
  CHECK(back.target.name == spec.target.name);
  CHECK(back.window_length == 4);
  CHECK(back.clamp == false);

  const fs::path dir = fresh_dir("edls-spec");
  save_wrangle_spec(dir / "spec.json", spec);
  const WrangleSpec loaded = load_wrangle_spec(dir / "spec.json");
  CHECK(loaded.feature_count() == spec.feature_count());

  std::ofstream(dir / "bad.json") << "{\"format\": \"something-else\"}";
  CHECK(code_of([&] { (void)load_wrangle_spec(dir / "bad.json"); }) ==
        Errc::model_format);
  fs::remove_all(dir);
}

TEST_CASE("synthetic telemetry is deterministic and plausibly causal") {
  const Table a = synth_table(200, 77);
  const Table b = synth_table(200, 77);
  CHECK(csv_text(a) == csv_text(b));
  const Table c = synth_table(200, 78);
  CHECK(csv_text(a) != csv_text(c));

  CHECK(a.header == std::vector<std::string>{"feed_kg", "genetics_index",
                                             "breed", "milk_yield"});
  REQUIRE(a.rows.size() == 200);

  std::vector<double> feed, yield;
  const std::size_t breed_col = a.column("breed");
  for (const auto& row : a.rows) {
    feed.push_back(std::stod(row[0]));
    yield.push_back(std::stod(row[3]));
    const std::string& breed = row[breed_col];
    CHECK((breed == "holstein" || breed == "jersey" || breed == "ayrshire"));
  }
  // Feed drives yield through the generator; noise cannot hide that.
  CHECK(pearson(feed, yield) > 0.3);

  // The bundled spec wrangles its own table into [0, 1] features.
  const WrangleSpec spec = default_synth_spec(3);
  CHECK(spec.feature_count() == 5);
  const WrangledData data = wrangle(a, spec);
  CHECK(data.windows.size() == 198);
  for (const auto& step : data.windows[0])
    for (double v : step) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
}

TEST_CASE("the keystore holds, lists and isolates dataset keys") {
  const fs::path dir = fresh_dir("edls-keystore");
  const KeyStore store(dir);
  const he::HEParams params = he::HEParams::insecure_test();
  const auto ctx = he::Context::create(params);
  SeededRng rng(5);
  const he::KeyBundle keys = he::KeyGenerator(ctx).generate(rng);

  CHECK_FALSE(store.exists("herd-7"));
  store.save("herd-7", params, keys);
  CHECK(store.exists("herd-7"));
  const KeyStore::Entry entry = store.load("herd-7");
  CHECK(entry.params == params);
  CHECK(entry.keys.secret.coeffs == keys.secret.coeffs);
  CHECK(entry.keys.public_key.param_id == keys.public_key.param_id);
  CHECK(entry.keys.relin.digits.size() == keys.relin.digits.size());

  store.save("another", params, keys);
  CHECK(store.list() == std::vector<std::string>{"another", "herd-7"});

  CHECK(code_of([&] { (void)store.load("never-stored"); }) ==
        Errc::cannot_decrypt);

  // Hostile names cannot escape the root directory.
  const std::string evil = "../../etc/passwd";
  store.save(evil, params, keys);
  CHECK(fs::exists(dir / KeyStore::sanitize(evil) / "keys.edls"));
  CHECK(KeyStore::sanitize(evil).find("..") == std::string::npos);
  CHECK(KeyStore::sanitize(evil).find('/') == std::string::npos);

  fs::remove_all(dir);
}

TEST_CASE("dataset encryption round-trips and guards its inputs") {
  const fs::path dir = fresh_dir("edls-encrypt");
  const KeyStore keystore(dir);
  SeededRng rng(13);
  SeededRng data_rng(14);

  const std::size_t T = 2, F = 3;
  std::vector<nn::Window> windows;
  for (int i = 0; i < 2; ++i) {
    nn::Window w(T, std::vector<double>(F));
    for (auto& row : w)
      for (auto& v : row) v = data_rng.unit();
    windows.push_back(std::move(w));
  }

  EncryptOptions options;
  options.params = he::HEParams::insecure_test();
  options.dataset_name = "rt";
  options.owner = "tester";
  const wire::EncryptedRecord record =
      encrypt_dataset(windows, options, keystore, rng);

  CHECK(record.meta.window_count == 2);
  CHECK(record.meta.window_length == 2);
  CHECK(record.meta.n_features == 3);
  CHECK(record.meta.sentinel_value == 0.5);
  REQUIRE(record.meta.sentinel_slot.has_value());
  CHECK(*record.meta.sentinel_slot == options.params.slot_count() - 1);
  REQUIRE(record.ciphertexts.size() == 4);
  REQUIRE(record.secret_key.has_value());
  REQUIRE(record.public_key.has_value());
  REQUIRE(record.relin_key.has_value());
  CHECK(keystore.exists("rt"));

  // Decrypting each timestep recovers the features and the sentinel.
  const auto ctx = he::Context::create(record.params);
  const KeyStore::Entry entry = keystore.load("rt");
  const he::Decryptor decryptor(ctx, entry.keys.secret);
  const he::Encoder encoder(ctx);
  for (std::size_t w = 0; w < windows.size(); ++w)
    for (std::size_t t = 0; t < T; ++t) {
      const auto slots = encoder.decode(
          decryptor.decrypt(record.ciphertexts[w * T + t]));
      for (std::size_t f = 0; f < F; ++f)
        CHECK(std::abs(slots[f] - windows[w][t][f]) < 1e-3);
      CHECK(std::abs(slots[options.params.slot_count() - 1] - 0.5) < 1e-3);
    }

  // The stripped copy carries everything but the secret.
  const wire::EncryptedRecord tx = strip_secret(record);
  CHECK_FALSE(tx.secret_key.has_value());
  CHECK(tx.ciphertexts.size() == record.ciphertexts.size());

  // Encrypting again under the same name reuses the stored keys.
  const wire::EncryptedRecord again =
      encrypt_dataset(windows, options, keystore, rng);
  CHECK(again.secret_key->coeffs == record.secret_key->coeffs);

  // Same name under different parameters is refused, not silently rekeyed.
  EncryptOptions other = options;
  other.params = he::HEParams::insecure_test_deep();
  CHECK(code_of([&] {
          (void)encrypt_dataset(windows, other, keystore, rng);
        }) == Errc::parameter_mismatch);

  // Shape violations are rejected before any key material is touched.
  std::vector<nn::Window> ragged = windows;
  ragged[1][0].push_back(0.5);
  CHECK(code_of([&] {
          (void)encrypt_dataset(ragged, options, keystore, rng);
        }) == Errc::invalid_params);

  // More features than free slots cannot fit beside the sentinel.
  nn::Window giant(1, std::vector<double>(options.params.slot_count(), 0.1));
  CHECK(code_of([&] {
          (void)encrypt_dataset({giant}, options, keystore, rng);
        }) == Errc::invalid_params);

  fs::remove_all(dir);
}

TEST_CASE("result decryption verifies the sentinel channel") {
  const fs::path dir = fresh_dir("edls-decrypt");
  const KeyStore keystore(dir);
  SeededRng rng(21);
  SeededRng data_rng(22);

  const std::size_t T = 2, F = 2;
  std::vector<nn::Window> windows;
  for (int i = 0; i < 3; ++i) {
    nn::Window w(T, std::vector<double>(F));
    for (auto& row : w)
      for (auto& v : row) v = data_rng.unit();
    windows.push_back(std::move(w));
  }

  EncryptOptions options;
  options.params = he::HEParams::insecure_test_deep();
  options.dataset_name = "verify";
  options.owner = "tester";
  const wire::EncryptedRecord record =
      encrypt_dataset(windows, options, keystore, rng);

  // Evaluate the model exactly the way the service does.
  const nn::ComputeGraph graph = nn::reference_model(T, F);
  const auto ctx = he::Context::create(record.params);
  const he::HeBackend backend(ctx, *record.relin_key);
  wire::EncryptedRecord result;
  result.params = record.params;
  result.meta = record.meta;
  result.meta.window_length = 1;
  result.meta.model_id = graph.name;
  result.meta.sentinel_expected = nn::sentinel_forward(graph, 0.5);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const std::span<const he::Ciphertext> window(
        record.ciphertexts.data() + w * T, T);
    result.ciphertexts.push_back(backend.mod_switch_to(
        nn::forward(graph, backend, window, *record.meta.sentinel_slot), 0));
  }

  const PredictionReport report = decrypt_result(result, keystore);
  CHECK(report.model_id == graph.name);
  REQUIRE(report.predictions.size() == 3);
  for (std::size_t w = 0; w < windows.size(); ++w)
    CHECK(std::abs(report.predictions[w] -
                   nn::predict_plain(graph, windows[w])) < 1e-2);
  for (double s : report.sentinel_values)
    CHECK(std::abs(s - report.sentinel_expected) < 0.1);

  // A keystore with *different* keys under the same dataset name cannot
  // decrypt this result: the sentinel catches it.
  const fs::path dir2 = fresh_dir("edls-decrypt-wrong");
  const KeyStore wrong_keys(dir2);
  SeededRng rng2(99);
  (void)encrypt_dataset(windows, options, wrong_keys, rng2);
  CHECK(code_of([&] { (void)decrypt_result(result, wrong_keys); }) ==
        Errc::sentinel_mismatch);

  // No keys stored at all: cannot_decrypt, stated plainly.
  const fs::path dir3 = fresh_dir("edls-decrypt-none");
  const KeyStore no_keys(dir3);
  CHECK(code_of([&] { (void)decrypt_result(result, no_keys); }) ==
        Errc::cannot_decrypt);

  fs::remove_all(dir);
  fs::remove_all(dir2);
  fs::remove_all(dir3);
}

TEST_SUITE_END();
