#ifndef SACG_FORWARD_HPP
#define SACG_FORWARD_HPP

#include <cmath>
#include <span>
#include <vector>

#include "sacg/topology.hpp"

namespace sacg {

// Overflow-safe logistic sigmoid; saturates cleanly for any finite x.
inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Derivatives from the neuron output y = sigmoid(x).
inline double sigmoid_deriv(double y) { return y * (1.0 - y); }
inline double sigmoid_second_deriv(double y) { return (1.0 - 2.0 * y) * sigmoid_deriv(y); }

// Per-neuron evaluation record, indexed 0..nq-1 in label order. x holds the
// weighted-sum input of computing neurons (0 elsewhere); y holds every
// neuron's output: pattern coordinates for the input layer, 1 for bias
// neurons, sigmoid(x) for computing neurons.
struct ForwardTrace {
  std::vector<double> x;
  std::vector<double> y;
};

ForwardTrace forward(const NetworkTopology& topology, const Vector& weights,
                     std::span<const double> features);

void forward_into(const NetworkTopology& topology, const Vector& weights,
                  std::span<const double> features, ForwardTrace& trace);

// Outputs of the n output-layer neurons.
Vector output_vector(const ForwardTrace& trace, const NetworkTopology& topology);

struct Classification {
  int class_label = 0;  // 1..n
  Vector outputs;
  bool ambiguous = false;
};

// Argmax with ties broken toward the lowest index; ambiguous when the top
// two outputs differ by less than 1e-6.
std::pair<int, bool> argmax_class(std::span<const double> outputs);

Classification classify(const NetworkTopology& topology, const Vector& weights,
                        std::span<const double> features);

}  // namespace sacg

#endif
