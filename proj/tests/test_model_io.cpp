#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sacg/forward.hpp"
#include "sacg/model_io.hpp"
#include "sacg/rng.hpp"
#include "sacg/trainer.hpp"

using namespace sacg;

namespace {

ModelFile sample_model(std::uint64_t seed) {
  ModelFile model;
  model.d = 2;
  model.n = 3;
  model.hidden_layers = 2;
  model.hidden_width = 4;
  model.transforms.assign(2, ColumnTransform{});
  model.transforms[0].standardized = true;
  model.transforms[0].mean = 1.0 / 3.0;
  model.transforms[0].stddev = 0.12345678901234567;
  model.class_names = {"adenoma", "bilateral hyperplasia", "carcinoma"};
  Rng rng(seed);
  model.weights = random_init(27, rng);
  model.weights[0] = 1e-300;
  model.weights[1] = -0.1;
  model.weights[2] = 12345.678901234567;
  model.seed = seed;
  model.error = 7.5e-4;
  model.cold_starts = 2;
  model.reasonable = true;
  return model;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string name) : path(std::move(name)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("save/load round-trips weights bit-exactly and bytes stably") {
  const ModelFile model = sample_model(7);
  TempFile file("model_roundtrip_test.json");
  save_model(model, file.path);
  const ModelFile loaded = load_model(file.path);

  CHECK(loaded.weights == model.weights);  // bitwise
  CHECK(loaded.d == model.d);
  CHECK(loaded.n == model.n);
  CHECK(loaded.hidden_layers == model.hidden_layers);
  CHECK(loaded.hidden_width == model.hidden_width);
  CHECK(loaded.transforms[0].mean == model.transforms[0].mean);
  CHECK(loaded.transforms[0].stddev == model.transforms[0].stddev);
  CHECK(loaded.class_names == model.class_names);
  CHECK(loaded.seed == model.seed);
  CHECK(loaded.error == model.error);
  CHECK(loaded.reasonable == model.reasonable);

  const std::string first_bytes = slurp(file.path);
  save_model(loaded, file.path);
  CHECK(slurp(file.path) == first_bytes);
}

TEST_CASE("a round-tripped model classifies identically") {
  const ModelFile model = sample_model(21);
  TempFile file("model_classify_test.json");
  save_model(model, file.path);
  const ModelFile loaded = load_model(file.path);

  const NetworkTopology topology = model.topology();
  const Dataset unknown = cushing_unknown_data();
  for (const Pattern& p : unknown.patterns) {
    const Classification a = classify(topology, model.weights, p.features);
    const Classification b = classify(topology, loaded.weights, p.features);
    CHECK(a.class_label == b.class_label);
    CHECK(a.outputs == b.outputs);  // bitwise
  }
}

TEST_CASE("model loading rejects malformed files") {
  CHECK_THROWS_AS(load_model("does_not_exist.json"), std::runtime_error);

  TempFile file("model_bad_test.json");
  {
    std::ofstream out(file.path);
    out << "{\"format\": \"something-else\"}";
  }
  CHECK_THROWS_AS(load_model(file.path), std::runtime_error);

  ModelFile short_weights = sample_model(3);
  short_weights.weights.pop_back();
  CHECK_THROWS_AS(model_from_json(to_json(short_weights)), std::runtime_error);

  {
    std::ofstream out(file.path);
    out << "not json";
  }
  CHECK_THROWS_AS(load_model(file.path), std::runtime_error);
}

TEST_CASE("topology() rebuilds the training-time shape") {
  const ModelFile model = sample_model(1);
  const NetworkTopology t = model.topology();
  CHECK(t.layer_sizes() == std::vector<int>{3, 3, 4, 3});
  CHECK(t.weight_count() == 27);
}
