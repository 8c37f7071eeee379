#include "sacg/topology.hpp"

#include <stdexcept>
#include <string>

namespace sacg {

NetworkTopology NetworkTopology::build(int input_dim, int class_count,
                                       int hidden_layer_count, int hidden_width) {
  if (input_dim < 1) throw std::invalid_argument("input_dim must be >= 1");
  if (class_count < 1) throw std::invalid_argument("class_count must be >= 1");
  if (hidden_layer_count < 1) throw std::invalid_argument("hidden_layer_count must be >= 1");
  if (hidden_layer_count >= 2 && hidden_width < 2)
    throw std::invalid_argument("hidden_width must be >= 2 when there are layers after the first");

  NetworkTopology t;
  t.input_dim_ = input_dim;
  t.class_count_ = class_count;
  t.hidden_layer_count_ = hidden_layer_count;
  t.hidden_width_ = hidden_layer_count >= 2 ? hidden_width : 0;

  t.layer_sizes_.push_back(input_dim + 1);  // input layer, bias last
  t.layer_sizes_.push_back(input_dim + 1);  // first layer, bias last
  for (int i = 1; i < hidden_layer_count; ++i) t.layer_sizes_.push_back(hidden_width);
  t.layer_sizes_.push_back(class_count);  // output layer, no bias

  const int layers = static_cast<int>(t.layer_sizes_.size());
  t.layer_offsets_.resize(layers);
  t.computing_counts_.resize(layers);
  int offset = 0;
  for (int l = 0; l < layers; ++l) {
    t.layer_offsets_[l] = offset;
    offset += t.layer_sizes_[l];
    if (l == 0)
      t.computing_counts_[l] = 0;
    else if (l == layers - 1)
      t.computing_counts_[l] = class_count;
    else
      t.computing_counts_[l] = t.layer_sizes_[l] - 1;
  }
  t.neuron_count_ = offset;

  t.pair_offsets_.resize(layers - 1);
  int windex = 0;
  for (int pair = 0; pair < layers - 1; ++pair) {
    t.pair_offsets_[pair] = windex;
    windex += t.layer_sizes_[pair] * t.computing_counts_[pair + 1];
  }
  t.weight_count_ = windex;
  return t;
}

int NetworkTopology::layer_of_label(int label) const {
  if (label < 1 || label > neuron_count_)
    throw std::invalid_argument("neuron label out of range: " + std::to_string(label));
  int layer = 0;
  while (label > last_label(layer)) ++layer;
  return layer;
}

bool NetworkTopology::is_bias(int label) const {
  const int layer = layer_of_label(label);
  return layer != layer_count() - 1 && label == last_label(layer);
}

int NetworkTopology::weight_index(int source_label, int dest_label) const {
  const int src_layer = layer_of_label(source_label);
  const int dst_layer = layer_of_label(dest_label);
  if (dst_layer != src_layer + 1)
    throw std::invalid_argument("neurons " + std::to_string(source_label) + " and " +
                                std::to_string(dest_label) + " are not in consecutive layers");
  const int dest_pos = dest_label - first_label(dst_layer);
  if (dest_pos >= computing_count(dst_layer))
    throw std::invalid_argument("neuron " + std::to_string(dest_label) +
                                " is a bias neuron and receives no input");
  const int src_pos = source_label - first_label(src_layer);
  return pair_offsets_[src_layer] + dest_pos * layer_sizes_[src_layer] + src_pos;
}

std::pair<int, int> NetworkTopology::weight_endpoints(int index) const {
  if (index < 0 || index >= weight_count_)
    throw std::invalid_argument("weight index out of range: " + std::to_string(index));
  int pair = static_cast<int>(pair_offsets_.size()) - 1;
  while (pair_offsets_[pair] > index) --pair;
  const int within = index - pair_offsets_[pair];
  const int dest_pos = within / layer_sizes_[pair];
  const int src_pos = within % layer_sizes_[pair];
  return {first_label(pair) + src_pos, first_label(pair + 1) + dest_pos};
}

}  // namespace sacg
