#ifndef SACG_NUMCHECK_HPP
#define SACG_NUMCHECK_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sacg/dataset.hpp"
#include "sacg/rng.hpp"
#include "sacg/topology.hpp"

namespace sacg {

using ValueFn = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;

// Central-difference gradient (f(w + h e_k) - f(w - h e_k)) / 2h. Consumes
// only the value function, so it is an oracle independent of any analytic
// gradient it is used to verify.
Vector fd_gradient(const ValueFn& value, const Vector& w, double h);

// Central difference of the gradient along v, with the step scaled by
// (1 + |w|) / (1 + |v|). v = 0 returns zeros without evaluating.
Vector fd_hvp(const GradientFn& grad, const Vector& w, const Vector& v, double h);

struct CheckTolerances {
  double gradient_step = 1e-4;
  double gradient_max_rel = 1e-5;
  double hvp_step = 1e-5;
  double hvp_rel_l2 = 1e-4;
  double bilinear_rel = 1e-10;  // symmetry and linearity of the HVP
};

struct CheckReport {
  std::string name;
  double max_rel_error = 0.0;
  double rel_l2_error = 0.0;
  int worst_coordinate = -1;
  double step = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

// Denominator floor for relative errors at true zeros.
double relative_error(double a, double b);

struct CheckOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  CheckTolerances tolerances;
  // Test hook: flip the sign of one analytic gradient component per trial
  // so the harness itself can be shown to catch a wrong gradient.
  bool inject_gradient_fault = false;
};

// Randomized gradient/HVP agreement, HVP symmetry, and HVP linearity checks
// on one instance, drawing `trials` weight vectors uniform in (-1, 1).
std::vector<CheckReport> check(const NetworkTopology& topology, const Dataset& dataset,
                               const CheckOptions& options);

// A small random classification instance: d <= 3, n <= 3, 1-2 hidden
// layers, widths <= 5, up to 5 patterns with finite features in (-2, 2).
std::pair<NetworkTopology, Dataset> random_small_instance(Rng& rng);

// Fresh random instance per trial; reports aggregate the worst case seen.
std::vector<CheckReport> check_random_instances(const CheckOptions& options);

}  // namespace sacg

#endif
