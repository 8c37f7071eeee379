#include "sacg/numcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sacg/objective.hpp"

namespace sacg {

Vector fd_gradient(const ValueFn& value, const Vector& w, double h) {
  if (h <= 0.0) throw std::invalid_argument("step must be positive");
  Vector g(w.size());
  Vector probe = w;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double save = probe[k];
    probe[k] = save + h;
    const double above = value(probe);
    probe[k] = save - h;
    const double below = value(probe);
    probe[k] = save;
    if (!std::isfinite(above) || !std::isfinite(below))
      throw std::runtime_error("objective not finite near probe point");
    g[k] = (above - below) / (2.0 * h);
  }
  return g;
}

Vector fd_hvp(const GradientFn& grad, const Vector& w, const Vector& v, double h) {
  if (h <= 0.0) throw std::invalid_argument("step must be positive");
  double w_norm = 0.0, v_norm = 0.0;
  for (double x : w) w_norm += x * x;
  for (double x : v) v_norm += x * x;
  if (v_norm == 0.0) return Vector(w.size(), 0.0);
  const double step = h * (1.0 + std::sqrt(w_norm)) / (1.0 + std::sqrt(v_norm));

  Vector probe(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) probe[k] = w[k] + step * v[k];
  const Vector above = grad(probe);
  for (std::size_t k = 0; k < w.size(); ++k) probe[k] = w[k] - step * v[k];
  const Vector below = grad(probe);

  Vector result(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!std::isfinite(above[k]) || !std::isfinite(below[k]))
      throw std::runtime_error("gradient not finite near probe point");
    result[k] = (above[k] - below[k]) / (2.0 * step);
  }
  return result;
}

double relative_error(double a, double b) {
  const double denom = std::max({std::fabs(a), std::fabs(b), 1e-8});
  return std::fabs(a - b) / denom;
}

namespace {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

Vector random_vector(std::size_t size, Rng& rng, double half_width = 1.0) {
  Vector v(size);
  for (double& x : v) x = half_width * rng.symmetric_unit();
  return v;
}

struct TrialState {
  CheckReport gradient{"gradient_vs_fd"};
  CheckReport hvp{"hvp_vs_fd"};
  CheckReport symmetry{"hvp_symmetry"};
  CheckReport linearity{"hvp_linearity"};
};

void observe(CheckReport& report, double rel, int coordinate) {
  if (rel > report.max_rel_error) {
    report.max_rel_error = rel;
    report.worst_coordinate = coordinate;
  }
}

void run_trial(const NetworkObjective& objective, Rng& rng, const CheckOptions& options,
               TrialState& state) {
  const std::size_t nw = objective.dimension();
  const CheckTolerances& tol = options.tolerances;
  const Vector w = random_vector(nw, rng);

  const ValueFn value = [&](const Vector& x) { return objective.value(x); };
  const GradientFn grad_fn = [&](const Vector& x) {
    Vector g;
    objective.value_and_gradient(x, g);
    return g;
  };

  Vector analytic;
  objective.value_and_gradient(w, analytic);
  if (options.inject_gradient_fault && !analytic.empty()) analytic[0] = -analytic[0];
  const Vector fd = fd_gradient(value, w, tol.gradient_step);
  for (std::size_t k = 0; k < nw; ++k)
    observe(state.gradient, relative_error(analytic[k], fd[k]), static_cast<int>(k));

  const Vector v = random_vector(nw, rng);
  Vector hv;
  objective.hessian_vector(w, v, hv);
  const Vector hv_fd = fd_hvp(grad_fn, w, v, tol.hvp_step);
  double diff2 = 0.0;
  int worst = -1;
  double worst_diff = -1.0;
  for (std::size_t k = 0; k < nw; ++k) {
    const double diff = hv[k] - hv_fd[k];
    diff2 += diff * diff;
    if (std::fabs(diff) > worst_diff) {
      worst_diff = std::fabs(diff);
      worst = static_cast<int>(k);
    }
  }
  const double rel_l2 = std::sqrt(diff2) / std::max(norm(hv_fd), 1e-8);
  if (rel_l2 > state.hvp.rel_l2_error) {
    state.hvp.rel_l2_error = rel_l2;
    state.hvp.worst_coordinate = worst;
  }
  state.hvp.max_rel_error = std::max(state.hvp.max_rel_error, rel_l2);

  const Vector u = random_vector(nw, rng);
  Vector hu;
  objective.hessian_vector(w, u, hu);
  observe(state.symmetry, relative_error(dot(u, hv), dot(v, hu)), -1);

  const double a = rng.uniform(-2.0, 2.0);
  const double b = rng.uniform(-2.0, 2.0);
  Vector combo(nw);
  for (std::size_t k = 0; k < nw; ++k) combo[k] = a * u[k] + b * v[k];
  Vector h_combo;
  objective.hessian_vector(w, combo, h_combo);
  for (std::size_t k = 0; k < nw; ++k)
    observe(state.linearity, relative_error(h_combo[k], a * hu[k] + b * hv[k]),
            static_cast<int>(k));
}

std::vector<CheckReport> finish(TrialState& state, const CheckOptions& options) {
  const CheckTolerances& tol = options.tolerances;
  state.gradient.step = tol.gradient_step;
  state.gradient.tolerance = tol.gradient_max_rel;
  state.gradient.pass = state.gradient.max_rel_error <= tol.gradient_max_rel;
  state.hvp.step = tol.hvp_step;
  state.hvp.tolerance = tol.hvp_rel_l2;
  state.hvp.pass = state.hvp.rel_l2_error <= tol.hvp_rel_l2;
  state.symmetry.tolerance = tol.bilinear_rel;
  state.symmetry.pass = state.symmetry.max_rel_error <= tol.bilinear_rel;
  state.linearity.tolerance = tol.bilinear_rel;
  state.linearity.pass = state.linearity.max_rel_error <= tol.bilinear_rel;
  return {state.gradient, state.hvp, state.symmetry, state.linearity};
}

}  // namespace

std::vector<CheckReport> check(const NetworkTopology& topology, const Dataset& dataset,
                               const CheckOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const NetworkObjective objective(topology, dataset);
  TrialState state;
  Rng rng(options.seed);
  for (int trial = 0; trial < options.trials; ++trial) {
    Rng trial_rng = rng.derive(trial);
    run_trial(objective, trial_rng, options, state);
  }
  return finish(state, options);
}

std::pair<NetworkTopology, Dataset> random_small_instance(Rng& rng) {
  const int d = 1 + static_cast<int>(rng.below(3));
  const int n = 1 + static_cast<int>(rng.below(3));
  const int hidden_layers = 1 + static_cast<int>(rng.below(2));
  const int hidden_width = 2 + static_cast<int>(rng.below(4));  // 2..5
  const NetworkTopology topology = NetworkTopology::build(d, n, hidden_layers, hidden_width);

  Dataset ds;
  ds.d = d;
  ds.n = n;
  ds.transforms.assign(d, ColumnTransform{});
  const int count = 1 + static_cast<int>(rng.below(5));
  for (int i = 0; i < count; ++i) {
    Pattern p;
    p.class_label = 1 + static_cast<int>(rng.below(n));
    p.features = random_vector(d, rng, 2.0);
    ds.patterns.push_back(std::move(p));
  }
  return {topology, ds};
}

std::vector<CheckReport> check_random_instances(const CheckOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  TrialState state;
  Rng rng(options.seed);
  for (int trial = 0; trial < options.trials; ++trial) {
    Rng trial_rng = rng.derive(trial);
    auto [topology, dataset] = random_small_instance(trial_rng);
    const NetworkObjective objective(std::move(topology), std::move(dataset));
    run_trial(objective, trial_rng, options, state);
  }
  return finish(state, options);
}

}  // namespace sacg
