#ifndef SACG_SCG_HPP
#define SACG_SCG_HPP

#include <functional>
#include <vector>

#include "sacg/oracle.hpp"
#include "sacg/topology.hpp"

namespace sacg {

enum class ScgStop {
  gradient_small,   // |r| fell below the gradient tolerance
  max_iterations,   // pass budget exhausted
  lambda_overflow,  // damping grew past lambda_cap with no accepted step
  callback_stop,    // the progress callback asked to stop
};

const char* to_string(ScgStop reason);

// One iteration's worth of minimizer state, exposed read-only to the
// progress callback. Vectors refer to the post-update values of the pass.
struct ScgState {
  int k = 0;       // accepted-step counter (drives the k mod nw restart)
  int passes = 0;  // full passes, accepted or failed
  Vector w;
  double E_w = 0.0;
  Vector r;  // -gradient at w
  Vector p;  // search direction
  Vector s;  // Hessian times p
  double delta = 0.0;   // damped curvature along p, positive after scaling
  double mu = 0.0;      // p . r
  double alpha = 0.0;   // step size
  double beta = 0.0;    // conjugate-direction coefficient
  double Delta = 0.0;   // comparison parameter (actual vs predicted reduction)
  double lambda = 0.0;
  double lambda_bar = 0.0;
  bool success = true;
  bool accepted = false;         // outcome of this pass
  bool curvature_fixed = false;  // the non-positive-curvature branch fired
};

struct ScgConfig {
  double gradient_tolerance = 1e-6;  // termination on |r|
  double initial_lambda = 1e-4;      // also restored on restarts
  int max_iterations = 1000;         // counts accepted-or-failed passes
  double lambda_cap = 1e60;
  bool freeze_lambda = false;  // test hook: suppress halving/quadrupling
  // Invoked once per pass; return false to stop.
  std::function<bool(const ScgState&)> on_iteration;
};

struct ScgResult {
  Vector w;
  double E = 0.0;
  int iterations = 0;  // passes
  int accepted_steps = 0;
  ScgStop reason = ScgStop::max_iterations;
  Vector best_w;
  double best_E = 0.0;
};

// Scaled conjugate gradient descent: conjugate directions with
// Levenberg-Marquardt style damping. Curvature delta = p'(H + lambda I)p is
// forced positive by raising lambda; the comparison parameter Delta
// (actual over model error reduction) accepts steps at Delta >= 0, halves
// lambda above 0.75, and quadruples it below 0.25. Rejected steps keep w
// and retry the same direction with the larger lambda. Restarts to the
// steepest-descent direction occur after any rejection and every nw
// accepted steps.
ScgResult scg_minimize(const ObjectiveOracle& oracle, Vector w0, const ScgConfig& config);

}  // namespace sacg

#endif
