// Copyright (c) 2026 The EDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "edls/nn/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace edls::nn {

namespace {

using nlohmann::json;

json layer_to_json(const LayerSpec& layer) {
  json j;
  if (const auto* conv = std::get_if<Conv1dLayer>(&layer)) {
    j["type"] = "conv1d";
    j["kernel"] = conv->kernel;
    j["bias"] = conv->bias;
    j["stride"] = conv->stride;
    j["trainable"] = conv->trainable;
  } else if (const auto* act = std::get_if<ActivationLayer>(&layer)) {
    j["type"] = "activation";
    j["kind"] = activation_name(act->kind);
  } else {
    const auto& dense = std::get<DenseLayer>(layer);
    j["type"] = "dense";
    j["weight"] = dense.weight;
    j["bias"] = dense.bias;
    j["trainable"] = dense.trainable;
  }
  return j;
}

LayerSpec layer_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "conv1d") {
    Conv1dLayer conv;
    conv.kernel = j.at("kernel").get<std::vector<std::vector<double>>>();
    conv.bias = j.at("bias").get<std::vector<double>>();
    conv.stride = j.value("stride", std::size_t{1});
    conv.trainable = j.value("trainable", true);
    return conv;
  }
  if (type == "activation") {
    ActivationLayer act;
    act.kind = activation_from_name(j.at("kind").get<std::string>());
    return act;
  }
  if (type == "dense") {
    DenseLayer dense;
    dense.weight = j.at("weight").get<std::vector<double>>();
    dense.bias = j.at("bias").get<double>();
    dense.trainable = j.value("trainable", true);
    return dense;
  }
  raise(Errc::model_format, "unknown layer type: " + type);
}

}  // namespace

std::string model_to_json(const ComputeGraph& graph) {
  graph.validate();
  json j;
  j["format"] = "edls-model";
  j["version"] = 1;
  j["name"] = graph.name;
  j["window_length"] = graph.window_length;
  j["n_features"] = graph.n_features;
  j["layers"] = json::array();
  for (const auto& layer : graph.layers)
    j["layers"].push_back(layer_to_json(layer));
  return j.dump(2);
}

ComputeGraph model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::model_format, std::string("model is not valid JSON: ") +
                                  e.what());
  }
  try {
    if (j.value("format", "") != "edls-model")
      raise(Errc::model_format, "missing edls-model format marker");
    if (j.value("version", 0) != 1)
      raise(Errc::model_format, "unsupported model version");
    ComputeGraph graph;
    graph.name = j.at("name").get<std::string>();
    graph.window_length = j.at("window_length").get<std::size_t>();
    graph.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& layer : j.at("layers"))
      graph.layers.push_back(layer_from_json(layer));
    graph.validate();
    return graph;
  } catch (const json::exception& e) {
    raise(Errc::model_format, std::string("malformed model: ") + e.what());
  }
}

void save_model(const ComputeGraph& graph,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::store_error, "cannot write " + path.string());
  out << model_to_json(graph) << '\n';
}

ComputeGraph load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, "no model at " + path.string());
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return model_from_json(text);
}

ComputeGraph reference_model(std::size_t window_length,
                             std::size_t n_features) {
  ComputeGraph graph;
  graph.name = "cnn-sigmoid-dense";
  graph.window_length = window_length;
  graph.n_features = n_features;
  Conv1dLayer conv;
  conv.kernel.assign(window_length, {0.1});
  conv.bias = {0.0};
  graph.layers.emplace_back(std::move(conv));
  graph.layers.emplace_back(ActivationLayer{ActivationKind::sigmoid_approx});
  DenseLayer dense;
  dense.weight.assign(n_features, 0.1);
  dense.bias = 0.0;
  graph.layers.emplace_back(std::move(dense));
  return graph;
}

}  // namespace edls::nn
