#include "sacg/objective.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sacg {

namespace {

// Scratch for one pattern's fused sweep, indexed by 0-based neuron position.
struct Sweep {
  ForwardTrace trace;               // x, y
  Vector de_dx, de_dy;              // error derivatives w.r.t. inputs/outputs
  Vector rx, ry;                    // directional derivatives of x, y along v
  Vector rde_dx, rde_dy;            // directional derivatives of de_dx, de_dy

  explicit Sweep(int nq)
      : de_dx(nq), de_dy(nq), rx(nq), ry(nq), rde_dx(nq), rde_dy(nq) {}
};

void check_pattern(const Pattern& p, const NetworkTopology& topology, std::size_t index) {
  if (!p.labeled())
    throw std::invalid_argument("pattern " + std::to_string(index + 1) + " has no class label");
  if (p.class_label > topology.class_count())
    throw std::invalid_argument("pattern " + std::to_string(index + 1) + " has label " +
                                std::to_string(p.class_label) + " but the network has " +
                                std::to_string(topology.class_count()) + " outputs");
}

double pattern_error(const NetworkTopology& topology, const ForwardTrace& trace,
                     int class_label) {
  const int n = topology.class_count();
  const int out = topology.layer_offset(topology.layer_count() - 1);
  double e = 0.0;
  for (int m = 0; m < n; ++m) {
    const double target = m + 1 == class_label ? 1.0 : 0.0;
    const double diff = target - trace.y[out + m];
    e += diff * diff;
  }
  return 0.5 * e;
}

// Backpropagation: de_dy at the output layer is y - r(a); interior layers
// pull it back through the weights, and de_dx = de_dy * sigmoid'(x).
void backprop(const NetworkTopology& topology, const Vector& weights, Sweep& s,
              int class_label) {
  const int layers = topology.layer_count();
  const int out = topology.layer_offset(layers - 1);
  for (int m = 0; m < topology.class_count(); ++m) {
    const double target = m + 1 == class_label ? 1.0 : 0.0;
    const double y = s.trace.y[out + m];
    s.de_dy[out + m] = y - target;
    s.de_dx[out + m] = s.de_dy[out + m] * sigmoid_deriv(y);
  }
  for (int t = layers - 2; t >= 1; --t) {
    const int base = topology.layer_offset(t);
    const int size = topology.layer_sizes()[t];
    const int right = topology.layer_offset(t + 1);
    const int right_computing = topology.computing_count(t + 1);
    const int wbase = topology.pair_weight_offset(t);
    for (int c = 0; c < topology.computing_count(t); ++c) {
      double sum = 0.0;
      for (int l = 0; l < right_computing; ++l)
        sum += s.de_dx[right + l] * weights[wbase + l * size + c];
      s.de_dy[base + c] = sum;
      s.de_dx[base + c] = sum * sigmoid_deriv(s.trace.y[base + c]);
    }
  }
}

// Directional derivatives along v of the forward pass: R{x} accumulates
// v_ki y_k + w_ki R{y_k}; R{y} = sigmoid'(x) R{x}. Input and bias outputs
// are constants, so their R{y} is zero.
void r_forward(const NetworkTopology& topology, const Vector& weights, const Vector& v,
               Sweep& s) {
  std::fill(s.rx.begin(), s.rx.end(), 0.0);
  std::fill(s.ry.begin(), s.ry.end(), 0.0);
  const int layers = topology.layer_count();
  for (int t = 1; t < layers; ++t) {
    const int left = topology.layer_offset(t - 1);
    const int left_size = topology.layer_sizes()[t - 1];
    const int right = topology.layer_offset(t);
    const int wbase = topology.pair_weight_offset(t - 1);
    for (int c = 0; c < topology.computing_count(t); ++c) {
      const double* w = weights.data() + wbase + c * left_size;
      const double* vv = v.data() + wbase + c * left_size;
      double sum = 0.0;
      for (int k = 0; k < left_size; ++k)
        sum += vv[k] * s.trace.y[left + k] + w[k] * s.ry[left + k];
      s.rx[right + c] = sum;
      s.ry[right + c] = sigmoid_deriv(s.trace.y[right + c]) * sum;
    }
  }
}

// Directional derivatives of the backpropagation quantities, right to left.
// The output layer seeds R{de_dy} = R{y}; interior layers add the v term
// alongside the pulled-back R{de_dx}.
void r_backprop(const NetworkTopology& topology, const Vector& weights, const Vector& v,
                Sweep& s) {
  const int layers = topology.layer_count();
  const int out = topology.layer_offset(layers - 1);
  for (int m = 0; m < topology.class_count(); ++m) {
    const int i = out + m;
    const double y = s.trace.y[i];
    s.rde_dy[i] = s.ry[i];
    s.rde_dx[i] = s.rde_dy[i] * sigmoid_deriv(y) + s.de_dy[i] * sigmoid_second_deriv(y) * s.rx[i];
  }
  for (int t = layers - 2; t >= 1; --t) {
    const int base = topology.layer_offset(t);
    const int size = topology.layer_sizes()[t];
    const int right = topology.layer_offset(t + 1);
    const int right_computing = topology.computing_count(t + 1);
    const int wbase = topology.pair_weight_offset(t);
    for (int c = 0; c < topology.computing_count(t); ++c) {
      const int i = base + c;
      double sum = 0.0;
      for (int l = 0; l < right_computing; ++l)
        sum += s.rde_dx[right + l] * weights[wbase + l * size + c] +
               s.de_dx[right + l] * v[wbase + l * size + c];
      const double y = s.trace.y[i];
      s.rde_dy[i] = sum;
      s.rde_dx[i] = sum * sigmoid_deriv(y) + s.de_dy[i] * sigmoid_second_deriv(y) * s.rx[i];
    }
  }
}

// g[w_ji] += de_dx_i * y_j, swept in canonical weight order.
void accumulate_gradient(const NetworkTopology& topology, const Sweep& s, Vector& grad) {
  const int layers = topology.layer_count();
  for (int t = 0; t < layers - 1; ++t) {
    const int left = topology.layer_offset(t);
    const int left_size = topology.layer_sizes()[t];
    const int right = topology.layer_offset(t + 1);
    int idx = topology.pair_weight_offset(t);
    for (int c = 0; c < topology.computing_count(t + 1); ++c) {
      const double dx = s.de_dx[right + c];
      for (int j = 0; j < left_size; ++j) grad[idx++] += dx * s.trace.y[left + j];
    }
  }
}

// (Hv)[w_ji] += R{de_dx_i} y_j + de_dx_i R{y_j}, canonical order.
void accumulate_hvp(const NetworkTopology& topology, const Sweep& s, Vector& hv) {
  const int layers = topology.layer_count();
  for (int t = 0; t < layers - 1; ++t) {
    const int left = topology.layer_offset(t);
    const int left_size = topology.layer_sizes()[t];
    const int right = topology.layer_offset(t + 1);
    int idx = topology.pair_weight_offset(t);
    for (int c = 0; c < topology.computing_count(t + 1); ++c) {
      const double rdx = s.rde_dx[right + c];
      const double dx = s.de_dx[right + c];
      for (int j = 0; j < left_size; ++j)
        hv[idx++] += rdx * s.trace.y[left + j] + dx * s.ry[left + j];
    }
  }
}

}  // namespace

double squared_error(const NetworkTopology& topology, const Vector& weights,
                     const Dataset& dataset) {
  Sweep s(topology.neuron_count());
  double e = 0.0;
  for (std::size_t i = 0; i < dataset.patterns.size(); ++i) {
    const Pattern& p = dataset.patterns[i];
    check_pattern(p, topology, i);
    forward_into(topology, weights, p.features, s.trace);
    e += pattern_error(topology, s.trace, p.class_label);
  }
  return e;
}

double gradient(const NetworkTopology& topology, const Vector& weights,
                const Dataset& dataset, Vector& grad) {
  Sweep s(topology.neuron_count());
  grad.assign(topology.weight_count(), 0.0);
  double e = 0.0;
  for (std::size_t i = 0; i < dataset.patterns.size(); ++i) {
    const Pattern& p = dataset.patterns[i];
    check_pattern(p, topology, i);
    forward_into(topology, weights, p.features, s.trace);
    e += pattern_error(topology, s.trace, p.class_label);
    backprop(topology, weights, s, p.class_label);
    accumulate_gradient(topology, s, grad);
  }
  return e;
}

Vector hessian_vector(const NetworkTopology& topology, const Vector& weights,
                      const Dataset& dataset, const Vector& v) {
  if (v.size() != static_cast<std::size_t>(topology.weight_count()))
    throw std::invalid_argument("direction length does not match weight count");
  Sweep s(topology.neuron_count());
  Vector hv(topology.weight_count(), 0.0);
  for (std::size_t i = 0; i < dataset.patterns.size(); ++i) {
    const Pattern& p = dataset.patterns[i];
    check_pattern(p, topology, i);
    forward_into(topology, weights, p.features, s.trace);
    backprop(topology, weights, s, p.class_label);
    r_forward(topology, weights, v, s);
    r_backprop(topology, weights, v, s);
    accumulate_hvp(topology, s, hv);
  }
  return hv;
}

NetworkObjective::NetworkObjective(NetworkTopology topology, Dataset dataset)
    : topology_(std::move(topology)), dataset_(std::move(dataset)) {
  if (dataset_.d != topology_.input_dim())
    throw std::invalid_argument("dataset dimension " + std::to_string(dataset_.d) +
                                " does not match network input " +
                                std::to_string(topology_.input_dim()));
  for (std::size_t i = 0; i < dataset_.patterns.size(); ++i)
    check_pattern(dataset_.patterns[i], topology_, i);
}

std::size_t NetworkObjective::dimension() const {
  return static_cast<std::size_t>(topology_.weight_count());
}

double NetworkObjective::value(const Vector& w) const {
  return squared_error(topology_, w, dataset_);
}

double NetworkObjective::value_and_gradient(const Vector& w, Vector& grad) const {
  return gradient(topology_, w, dataset_, grad);
}

void NetworkObjective::hessian_vector(const Vector& w, const Vector& v, Vector& out) const {
  out = sacg::hessian_vector(topology_, w, dataset_, v);
}

NetworkObjective make_oracle(NetworkTopology topology, Dataset dataset) {
  return NetworkObjective(std::move(topology), std::move(dataset));
}

}  // namespace sacg
