#include "sacg/forward.hpp"

#include <stdexcept>
#include <string>

namespace sacg {

namespace {
constexpr double kAmbiguityGap = 1e-6;
}

void forward_into(const NetworkTopology& topology, const Vector& weights,
                  std::span<const double> features, ForwardTrace& trace) {
  const int d = topology.input_dim();
  if (static_cast<int>(features.size()) != d)
    throw std::invalid_argument("expected " + std::to_string(d) + " features, got " +
                                std::to_string(features.size()));
  if (static_cast<int>(weights.size()) != topology.weight_count())
    throw std::invalid_argument("weight vector length does not match topology");

  const int nq = topology.neuron_count();
  trace.x.assign(nq, 0.0);
  trace.y.assign(nq, 0.0);

  for (int j = 0; j < d; ++j) trace.y[j] = features[j];
  trace.y[d] = 1.0;  // input-layer bias slot

  const int layers = topology.layer_count();
  for (int t = 1; t < layers; ++t) {
    const int left = topology.layer_offset(t - 1);
    const int left_size = topology.layer_sizes()[t - 1];
    const int right = topology.layer_offset(t);
    const int computing = topology.computing_count(t);
    const int wbase = topology.pair_weight_offset(t - 1);
    for (int c = 0; c < computing; ++c) {
      const double* w = weights.data() + wbase + c * left_size;
      double sum = 0.0;
      for (int s = 0; s < left_size; ++s) sum += w[s] * trace.y[left + s];
      trace.x[right + c] = sum;
      trace.y[right + c] = sigmoid(sum);
    }
    if (t != layers - 1) trace.y[right + topology.layer_sizes()[t] - 1] = 1.0;
  }
}

ForwardTrace forward(const NetworkTopology& topology, const Vector& weights,
                     std::span<const double> features) {
  ForwardTrace trace;
  forward_into(topology, weights, features, trace);
  return trace;
}

Vector output_vector(const ForwardTrace& trace, const NetworkTopology& topology) {
  const int n = topology.class_count();
  const int base = topology.layer_offset(topology.layer_count() - 1);
  return Vector(trace.y.begin() + base, trace.y.begin() + base + n);
}

std::pair<int, bool> argmax_class(std::span<const double> outputs) {
  int best = 0;
  for (std::size_t m = 1; m < outputs.size(); ++m)
    if (outputs[m] > outputs[best]) best = static_cast<int>(m);
  bool ambiguous = false;
  for (std::size_t m = 0; m < outputs.size(); ++m) {
    if (static_cast<int>(m) == best) continue;
    if (outputs[best] - outputs[m] < kAmbiguityGap) ambiguous = true;
  }
  return {best + 1, ambiguous};
}

Classification classify(const NetworkTopology& topology, const Vector& weights,
                        std::span<const double> features) {
  const ForwardTrace trace = forward(topology, weights, features);
  Classification result;
  result.outputs = output_vector(trace, topology);
  auto [label, ambiguous] = argmax_class(result.outputs);
  result.class_label = label;
  result.ambiguous = ambiguous;
  return result;
}

}  // namespace sacg
