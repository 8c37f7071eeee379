#ifndef SACG_TRAINER_HPP
#define SACG_TRAINER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sacg/annealing.hpp"
#include "sacg/dataset.hpp"
#include "sacg/rng.hpp"
#include "sacg/scg.hpp"
#include "sacg/topology.hpp"

namespace sacg {

enum class PhaseKind { sa_low, scg, sa_high };

const char* to_string(PhaseKind kind);

struct PhaseRecord {
  int cold_start = 0;  // 1-based
  PhaseKind kind = PhaseKind::sa_low;
  long iterations = 0;  // annealing moves or minimizer passes
  double best_error = 0.0;
};

struct TrainerConfig {
  double target_error = 1e-3;    // reasonable-solution threshold
  int scg_iteration_factor = 10; // per-launch pass budget = factor * nw
  int max_rounds = 20;           // anneal+minimize rounds per cold start (K3)
  std::uint64_t seed = 0;
  ScgConfig scg;                 // max_iterations is set per launch
};

struct TrainingReport {
  Vector best_weights;
  double best_error = 0.0;
  bool reasonable = false;
  int cold_starts = 0;
  std::vector<PhaseRecord> phases;
  std::uint64_t seed = 0;
};

struct TrainingStatus {
  int cold_starts = 0;
  double best_error = 0.0;
  bool reasonable = false;
};

// Decides the interactive questions of the training process: whether to run
// the rescue step even though a reasonable solution exists, and whether to
// begin another cold start.
class RestartPolicy {
 public:
  virtual ~RestartPolicy() = default;
  virtual bool rescue_despite_reasonable(const TrainingStatus& status) = 0;
  virtual bool another_cold_start(const TrainingStatus& status) = 0;
};

class AutomaticPolicy final : public RestartPolicy {
 public:
  explicit AutomaticPolicy(int max_cold_starts, bool accept_first_reasonable = true)
      : max_cold_starts_(max_cold_starts < 1 ? 1 : max_cold_starts),
        accept_first_reasonable_(accept_first_reasonable) {}

  bool rescue_despite_reasonable(const TrainingStatus&) override {
    return !accept_first_reasonable_;
  }
  bool another_cold_start(const TrainingStatus& status) override {
    return !status.reasonable && status.cold_starts < max_cold_starts_;
  }

 private:
  int max_cold_starts_;
  bool accept_first_reasonable_;
};

// Prompts on the given streams at the decision points above.
class InteractivePolicy final : public RestartPolicy {
 public:
  InteractivePolicy(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  bool rescue_despite_reasonable(const TrainingStatus& status) override;
  bool another_cold_start(const TrainingStatus& status) override;

 private:
  bool ask(const std::string& question, bool default_yes);
  std::istream& in_;
  std::ostream& out_;
};

bool is_reasonable(double error, double eps);

// Uniform coordinates in (-1, 1).
Vector random_init(std::size_t nw, Rng& rng);

// One cold start: low-intensity annealing seeds the scaled conjugate
// gradient minimizer; the pair repeats up to max_rounds while the minimizer
// keeps hitting its pass budget; a single high-intensity annealing plus
// minimizer rescue runs when it stalls or converges without a reasonable
// solution. The best weights ever seen by any minimizer launch are tracked
// throughout, and the policy decides on further cold starts. Deterministic
// under a fixed seed with AutomaticPolicy.
TrainingReport train(const NetworkTopology& topology, const Dataset& dataset,
                     const TrainerConfig& config, RestartPolicy& policy,
                     std::ostream* log = nullptr);

}  // namespace sacg

#endif
