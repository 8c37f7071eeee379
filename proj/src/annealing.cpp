#include "sacg/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sacg {

void AnnealingConfig::validate(std::size_t nw) const {
  if (moves_per_pass < 1 || max_passes < 1)
    throw std::invalid_argument("annealing pass counts must be >= 1");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
    throw std::invalid_argument("cooling_factor must be in (0, 1)");
  if (step_half_width <= 0.0) throw std::invalid_argument("step_half_width must be positive");
  if (initial_temperature <= 0.0) throw std::invalid_argument("temperature must be positive");
  if (max_coords_per_move < 1 || static_cast<std::size_t>(max_coords_per_move) > nw)
    throw std::invalid_argument("max_coords_per_move must be in 1..nw");
}

int default_coords_per_move(std::size_t nw) {
  const double scaled = 0.05 * static_cast<double>(nw);
  const int nb = scaled >= 2.0 ? static_cast<int>(scaled) : 2;
  return static_cast<int>(std::min<std::size_t>(nb, nw));
}

AnnealingConfig low_intensity_config(std::size_t nw) {
  AnnealingConfig c;
  c.moves_per_pass = 100;
  c.max_passes = 20;
  c.initial_temperature = 1.0;
  c.cooling_factor = 0.99;
  c.step_half_width = 0.2;
  c.target_error = 1e-3;
  c.max_coords_per_move = default_coords_per_move(nw);
  return c;
}

AnnealingConfig high_intensity_config(std::size_t nw) {
  AnnealingConfig c;
  c.moves_per_pass = 5000;
  c.max_passes = 250;
  c.initial_temperature = 0.1;
  c.cooling_factor = 0.99;
  c.step_half_width = 1.0;
  c.target_error = 1e-3;
  c.max_coords_per_move = default_coords_per_move(nw);
  return c;
}

bool metropolis_accept(double current_error, double candidate_error, double temperature,
                       Rng& rng) {
  const double r = rng.uniform01();
  return r < std::exp((current_error - candidate_error) / temperature);
}

AnnealingResult anneal(const std::function<double(const Vector&)>& objective,
                       const Vector& start, const AnnealingConfig& config, Rng& rng) {
  const std::size_t nw = start.size();
  config.validate(nw);

  AnnealingResult result;
  const double initial_error = objective(start);
  ++result.evaluations;

  Vector best = start;
  double best_error = initial_error;
  Vector current = start;
  double current_error = std::numeric_limits<double>::infinity();
  int improvements = 0;
  int improvements_at_pass_start = 0;
  double temperature = config.initial_temperature;

  Vector candidate(nw);
  std::vector<std::size_t> pool(nw);
  std::iota(pool.begin(), pool.end(), std::size_t{0});

  for (int pass = 1; pass <= config.max_passes; ++pass) {
    if (improvements_at_pass_start == improvements) temperature *= config.cooling_factor;
    improvements_at_pass_start = improvements;

    for (int move = 0; move < config.moves_per_pass; ++move) {
      candidate = current;
      const std::size_t nv = 1 + rng.below(static_cast<std::uint64_t>(config.max_coords_per_move));
      // Partial Fisher-Yates gives nv distinct coordinates without rejection.
      for (std::size_t m = 0; m < nv; ++m) {
        const std::size_t pick = m + rng.below(nw - m);
        std::swap(pool[m], pool[pick]);
        candidate[pool[m]] += config.step_half_width * rng.symmetric_unit();
      }
      const double candidate_error = objective(candidate);
      ++result.evaluations;

      if (candidate_error < best_error) {
        best = candidate;
        best_error = candidate_error;
        current = candidate;
        current_error = candidate_error;
        ++improvements;
      } else if (candidate_error < current_error) {
        current = candidate;
        current_error = candidate_error;
      } else if (metropolis_accept(current_error, candidate_error, temperature, rng)) {
        current = candidate;
        current_error = candidate_error;
      }
    }

    result.passes.push_back(
        {pass, temperature, improvements, best_error, current_error});

    if (improvements > 0 && best_error < config.target_error) break;
  }

  if (improvements > 0) {
    current = best;
    current_error = best_error;
  }
  result.weights = std::move(current);
  result.error = current_error;
  result.improvements = improvements;
  result.reached_target = improvements > 0 && best_error < config.target_error;
  return result;
}

}  // namespace sacg
