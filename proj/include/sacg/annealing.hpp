#ifndef SACG_ANNEALING_HPP
#define SACG_ANNEALING_HPP

#include <functional>
#include <vector>

#include "sacg/rng.hpp"
#include "sacg/topology.hpp"

namespace sacg {

struct AnnealingConfig {
  int moves_per_pass = 100;         // inner iterations per temperature pass
  int max_passes = 20;              // temperature passes
  double initial_temperature = 1.0;
  double cooling_factor = 0.99;     // applied at the start of best-free passes
  double step_half_width = 0.2;     // each touched coordinate moves by less than this
  double target_error = 1e-3;       // early exit once the best drops below this
  int max_coords_per_move = 1;      // nb; each move perturbs 1..nb coordinates

  void validate(std::size_t nw) const;
};

// nb rule: the largest integer <= 0.05 * nw when that is at least 2,
// otherwise 2 (clamped to nw for tiny problems).
int default_coords_per_move(std::size_t nw);

// Low intensity: few moves, hot start, narrow steps. Used to (re)seed the
// gradient minimizer.
AnnealingConfig low_intensity_config(std::size_t nw);
// High intensity: many moves, cool start, full-width steps. Used once as a
// rescue when the minimizer stalls.
AnnealingConfig high_intensity_config(std::size_t nw);

struct AnnealPassRecord {
  int pass = 0;  // 1-based
  double temperature = 0.0;
  int improvements = 0;  // cumulative new-best count
  double best_error = 0.0;
  double current_error = 0.0;
};

struct AnnealingResult {
  Vector weights;       // best solution when improved, else last accepted
  double error = 0.0;
  int improvements = 0;  // count of new-best events (k0)
  bool reached_target = false;
  long evaluations = 0;
  std::vector<AnnealPassRecord> passes;
};

// Metropolis rule for a candidate no better than the current solution:
// accept with probability exp((current - candidate) / temperature). This is
// the annealer's production accept path, split out for statistical testing.
bool metropolis_accept(double current_error, double candidate_error, double temperature,
                       Rng& rng);

// Simulated annealing over an arbitrary value function. Each move copies
// the current solution, perturbs nv <= nb distinct coordinates by
// step_half_width * uniform(-1, 1), and accepts new bests, improvements
// over the current solution, or Metropolis-accepted regressions. The
// temperature cools by cooling_factor at the start of every pass whose
// predecessor produced no new best (including the first pass). Runs are
// bit-reproducible for a fixed seed.
AnnealingResult anneal(const std::function<double(const Vector&)>& objective,
                       const Vector& start, const AnnealingConfig& config, Rng& rng);

}  // namespace sacg

#endif
