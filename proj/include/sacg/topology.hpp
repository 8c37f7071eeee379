#ifndef SACG_TOPOLOGY_HPP
#define SACG_TOPOLOGY_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace sacg {

using Vector = std::vector<double>;

// Layered feed-forward network shape. Layers left to right: the input layer
// (d pattern coordinates plus a bias slot), a first layer of d computing
// neurons plus a bias neuron, zero or more equal-width hidden layers (each
// with a trailing bias neuron), and an output layer of n computing neurons.
// Neurons are labeled 1..nq left to right, top to bottom within a layer,
// bias last in every non-output layer. Weights live in a flat vector whose
// canonical order is: layer pairs left to right; within a pair, destination
// computing neurons by ascending label; within a destination, source
// neurons by ascending label.
class NetworkTopology {
 public:
  // hidden_layer_count counts the first layer; hidden_width (which includes
  // the bias neuron) applies to hidden layers after the first and must be
  // >= 2 when there are any. It is ignored when hidden_layer_count == 1.
  static NetworkTopology build(int input_dim, int class_count,
                               int hidden_layer_count, int hidden_width);

  int input_dim() const { return input_dim_; }
  int class_count() const { return class_count_; }
  int hidden_layer_count() const { return hidden_layer_count_; }
  int hidden_width() const { return hidden_width_; }

  int layer_count() const { return static_cast<int>(layer_sizes_.size()); }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  int neuron_count() const { return neuron_count_; }
  int weight_count() const { return weight_count_; }

  // 0-based position of a layer's first neuron in label order.
  int layer_offset(int layer) const { return layer_offsets_[layer]; }
  // Number of computing neurons in a layer (0 for the input layer).
  int computing_count(int layer) const { return computing_counts_[layer]; }
  // Start of the weight block for the pair (layer, layer + 1).
  int pair_weight_offset(int pair) const { return pair_offsets_[pair]; }

  int first_label(int layer) const { return layer_offsets_[layer] + 1; }
  int last_label(int layer) const { return layer_offsets_[layer] + layer_sizes_[layer]; }
  int layer_of_label(int label) const;
  bool is_bias(int label) const;

  // Canonical flat index of the weight feeding neuron dest_label from
  // neuron source_label. Throws std::invalid_argument unless source and
  // dest sit in consecutive layers and dest is a computing neuron.
  int weight_index(int source_label, int dest_label) const;
  // Inverse of weight_index: (source_label, dest_label).
  std::pair<int, int> weight_endpoints(int index) const;

 private:
  NetworkTopology() = default;

  int input_dim_ = 0;
  int class_count_ = 0;
  int hidden_layer_count_ = 0;
  int hidden_width_ = 0;
  int neuron_count_ = 0;
  int weight_count_ = 0;
  std::vector<int> layer_sizes_;
  std::vector<int> layer_offsets_;
  std::vector<int> computing_counts_;
  std::vector<int> pair_offsets_;
};

}  // namespace sacg

#endif
