#ifndef SACG_MODEL_IO_HPP
#define SACG_MODEL_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sacg/dataset.hpp"
#include "sacg/topology.hpp"

namespace sacg {

// Trained-network file: topology, the input transform record, weights in
// canonical order at full binary64 precision, and training metadata.
// Serialized as JSON; weights round-trip bit-exactly.
struct ModelFile {
  int version = 1;
  int d = 0;
  int n = 0;
  int hidden_layers = 0;
  int hidden_width = 0;
  std::vector<ColumnTransform> transforms;
  std::vector<std::string> class_names;
  Vector weights;
  std::uint64_t seed = 0;
  double error = 0.0;
  int cold_starts = 0;
  bool reasonable = false;

  NetworkTopology topology() const;
};

std::string to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

}  // namespace sacg

#endif
