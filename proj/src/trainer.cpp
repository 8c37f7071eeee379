#include "sacg/trainer.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "sacg/objective.hpp"

namespace sacg {

const char* to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::sa_low: return "sa_low";
    case PhaseKind::scg: return "scg";
    case PhaseKind::sa_high: return "sa_high";
  }
  return "?";
}

bool is_reasonable(double error, double eps) { return error < eps; }

Vector random_init(std::size_t nw, Rng& rng) {
  Vector w(nw);
  for (double& x : w) x = rng.symmetric_unit();
  return w;
}

bool InteractivePolicy::ask(const std::string& question, bool default_yes) {
  out_ << question << (default_yes ? " [Y/n] " : " [y/N] ") << std::flush;
  std::string answer;
  if (!std::getline(in_, answer)) return default_yes;
  if (answer.empty()) return default_yes;
  return answer[0] == 'y' || answer[0] == 'Y';
}

bool InteractivePolicy::rescue_despite_reasonable(const TrainingStatus& status) {
  out_ << "Reasonable solution found (E = " << status.best_error << ").\n";
  return ask("Run the high-intensity rescue phase for a possibly better solution?", false);
}

bool InteractivePolicy::another_cold_start(const TrainingStatus& status) {
  if (status.reasonable)
    out_ << "Reasonable solution in hand (E = " << status.best_error << ").\n";
  else
    out_ << "No reasonable solution after " << status.cold_starts
         << " cold start(s); best E = " << status.best_error << ".\n";
  return ask("Start another cold start?", !status.reasonable);
}

namespace {

struct BestTracker {
  Vector weights;
  double error = std::numeric_limits<double>::infinity();

  void offer(const Vector& w, double e) {
    if (e < error) {
      error = e;
      weights = w;
    }
  }
};

struct ColdStartRun {
  const NetworkObjective& oracle;
  const TrainerConfig& config;
  TrainingReport& report;
  BestTracker& global;
  std::ostream* log;
  int cold_start;
  Rng rng;

  BestTracker local;  // best over this cold start's minimizer executions

  void record(PhaseKind kind, long iterations, double best_error) {
    report.phases.push_back({cold_start, kind, iterations, best_error});
    if (log)
      *log << "phase=" << to_string(kind) << " iters=" << iterations << " bestE=" << best_error
           << "\n";
  }

  AnnealingResult run_annealing(PhaseKind kind, const Vector& start) {
    const AnnealingConfig sa_config = kind == PhaseKind::sa_low
                                          ? low_intensity_config(oracle.dimension())
                                          : high_intensity_config(oracle.dimension());
    AnnealingResult sa = anneal([this](const Vector& w) { return oracle.value(w); }, start,
                                sa_config, rng);
    record(kind, sa.evaluations, sa.passes.back().best_error);
    return sa;
  }

  ScgResult run_minimizer(const Vector& start) {
    ScgConfig scg_config = config.scg;
    scg_config.max_iterations =
        config.scg_iteration_factor * static_cast<int>(oracle.dimension());
    scg_config.on_iteration = [this](const ScgState& state) {
      local.offer(state.w, state.E_w);
      global.offer(state.w, state.E_w);
      return !is_reasonable(local.error, config.target_error);
    };
    ScgResult res = scg_minimize(oracle, start, scg_config);
    local.offer(res.best_w, res.best_E);
    global.offer(res.best_w, res.best_E);
    record(PhaseKind::scg, res.iterations, res.best_E);
    return res;
  }

  // Returns false if the cold start had to be abandoned (non-finite error).
  bool run(RestartPolicy& policy) {
    int rounds = 0;
    for (;;) {
      const Vector start = rounds == 0 ? random_init(oracle.dimension(), rng) : local.weights;
      ++rounds;
      const AnnealingResult sa = run_annealing(PhaseKind::sa_low, start);
      if (!std::isfinite(sa.error)) return false;

      const ScgResult res = run_minimizer(sa.weights);
      if (!std::isfinite(res.E)) return false;

      if (is_reasonable(local.error, config.target_error)) {
        TrainingStatus status{cold_start, local.error, true};
        if (!policy.rescue_despite_reasonable(status)) return true;
        break;  // rescue requested anyway
      }
      if (res.reason == ScgStop::max_iterations) {
        // Insufficient progress within the pass budget: reseed and retry,
        // up to max_rounds, then fall through to the rescue step.
        if (rounds < config.max_rounds) continue;
        break;
      }
      // Converged or stalled short of a reasonable solution.
      break;
    }

    // Rescue: one high-intensity annealing run plus a final minimization.
    const AnnealingResult sa = run_annealing(PhaseKind::sa_high, local.weights);
    if (!std::isfinite(sa.error)) return false;
    const ScgResult res = run_minimizer(sa.weights);
    return std::isfinite(res.E);
  }
};

}  // namespace

TrainingReport train(const NetworkTopology& topology, const Dataset& dataset,
                     const TrainerConfig& config, RestartPolicy& policy, std::ostream* log) {
  if (dataset.patterns.empty()) throw std::invalid_argument("training set is empty");
  if (config.max_rounds < 1 || config.scg_iteration_factor < 1)
    throw std::invalid_argument("trainer limits must be >= 1");
  const NetworkObjective oracle(topology, dataset);

  TrainingReport report;
  report.seed = config.seed;
  BestTracker global;
  const Rng master(config.seed);

  for (int cold_start = 1;; ++cold_start) {
    ColdStartRun run{oracle,    config, report, global, log, cold_start,
                     master.derive(static_cast<std::uint64_t>(cold_start - 1))};
    run.run(policy);
    report.cold_starts = cold_start;

    TrainingStatus status{cold_start, global.error,
                          is_reasonable(global.error, config.target_error)};
    if (!policy.another_cold_start(status)) break;
  }

  report.best_weights = global.weights;
  report.best_error = global.error;
  report.reasonable = is_reasonable(global.error, config.target_error);
  return report;
}

}  // namespace sacg
