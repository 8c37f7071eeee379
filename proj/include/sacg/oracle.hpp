#ifndef SACG_ORACLE_HPP
#define SACG_ORACLE_HPP

#include <cstddef>

#include "sacg/topology.hpp"

namespace sacg {

// Minimal interface a minimizer needs from a twice-differentiable
// objective: values, gradients, and exact Hessian-vector products.
// Implementations must be deterministic for a fixed argument and safe for
// concurrent calls at different points.
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(const Vector& w) const = 0;
  // Returns the value; writes the gradient (resized to dimension()).
  virtual double value_and_gradient(const Vector& w, Vector& gradient) const = 0;
  // Writes H(w) * v into out (resized to dimension()).
  virtual void hessian_vector(const Vector& w, const Vector& v, Vector& out) const = 0;
};

}  // namespace sacg

#endif
