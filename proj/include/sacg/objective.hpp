#ifndef SACG_OBJECTIVE_HPP
#define SACG_OBJECTIVE_HPP

#include "sacg/dataset.hpp"
#include "sacg/forward.hpp"
#include "sacg/oracle.hpp"
#include "sacg/topology.hpp"

namespace sacg {

// Total squared error E(w) = 1/2 sum over patterns of |target - output|^2.
double squared_error(const NetworkTopology& topology, const Vector& weights,
                     const Dataset& dataset);

// E(w) and its exact gradient in one backpropagation sweep per pattern.
double gradient(const NetworkTopology& topology, const Vector& weights,
                const Dataset& dataset, Vector& grad);

// Exact Hessian-vector product E''(w) v, accumulated pattern by pattern
// alongside the gradient sweep it reuses.
Vector hessian_vector(const NetworkTopology& topology, const Vector& weights,
                      const Dataset& dataset, const Vector& v);

// Squared-error objective over a fixed topology and training set.
// Accumulation runs in dataset order with the canonical weight order, so
// results are bit-reproducible.
class NetworkObjective final : public ObjectiveOracle {
 public:
  NetworkObjective(NetworkTopology topology, Dataset dataset);

  std::size_t dimension() const override;
  double value(const Vector& w) const override;
  double value_and_gradient(const Vector& w, Vector& gradient) const override;
  void hessian_vector(const Vector& w, const Vector& v, Vector& out) const override;

  const NetworkTopology& topology() const { return topology_; }
  const Dataset& dataset() const { return dataset_; }

 private:
  NetworkTopology topology_;
  Dataset dataset_;
};

NetworkObjective make_oracle(NetworkTopology topology, Dataset dataset);

}  // namespace sacg

#endif
