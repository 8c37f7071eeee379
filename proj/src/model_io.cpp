#include "sacg/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sacg {

using nlohmann::json;

NetworkTopology ModelFile::topology() const {
  return NetworkTopology::build(d, n, hidden_layers, hidden_width == 0 ? 2 : hidden_width);
}

std::string to_json(const ModelFile& model) {
  json j;
  j["format"] = "sacg-model";
  j["version"] = model.version;
  j["topology"] = {{"d", model.d},
                   {"n", model.n},
                   {"hidden_layers", model.hidden_layers},
                   {"hidden_width", model.hidden_width}};
  json transforms = json::array();
  for (const ColumnTransform& t : model.transforms)
    transforms.push_back({{"log", t.log_applied},
                          {"standardized", t.standardized},
                          {"mean", t.mean},
                          {"stddev", t.stddev}});
  j["transforms"] = std::move(transforms);
  if (!model.class_names.empty()) j["class_names"] = model.class_names;
  j["weights"] = model.weights;
  j["training"] = {{"seed", model.seed},
                   {"error", model.error},
                   {"cold_starts", model.cold_starts},
                   {"reasonable", model.reasonable}};
  return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("format", std::string()) != "sacg-model")
    throw std::runtime_error("not a model file (missing format marker)");
  ModelFile model;
  model.version = j.at("version").get<int>();
  if (model.version != 1)
    throw std::runtime_error("unsupported model version " + std::to_string(model.version));
  const json& topo = j.at("topology");
  model.d = topo.at("d").get<int>();
  model.n = topo.at("n").get<int>();
  model.hidden_layers = topo.at("hidden_layers").get<int>();
  model.hidden_width = topo.at("hidden_width").get<int>();
  for (const json& t : j.at("transforms")) {
    ColumnTransform c;
    c.log_applied = t.at("log").get<bool>();
    c.standardized = t.at("standardized").get<bool>();
    c.mean = t.at("mean").get<double>();
    c.stddev = t.at("stddev").get<double>();
    model.transforms.push_back(c);
  }
  if (j.contains("class_names"))
    model.class_names = j.at("class_names").get<std::vector<std::string>>();
  model.weights = j.at("weights").get<Vector>();
  const json& training = j.at("training");
  model.seed = training.at("seed").get<std::uint64_t>();
  model.error = training.at("error").get<double>();
  model.cold_starts = training.at("cold_starts").get<int>();
  model.reasonable = training.at("reasonable").get<bool>();

  const NetworkTopology topology = model.topology();
  if (static_cast<int>(model.weights.size()) != topology.weight_count())
    throw std::runtime_error("model has " + std::to_string(model.weights.size()) +
                             " weights but the topology needs " +
                             std::to_string(topology.weight_count()));
  if (static_cast<int>(model.transforms.size()) != model.d)
    throw std::runtime_error("model transform record does not cover every input column");
  return model;
}

void save_model(const ModelFile& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << to_json(model);
  if (!out) throw std::runtime_error("failed writing model file: " + path);
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return model_from_json(buffer.str());
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": invalid model file: " + e.what());
  }
}

}  // namespace sacg
