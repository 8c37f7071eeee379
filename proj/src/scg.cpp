#include "sacg/scg.hpp"

#include <cmath>
#include <stdexcept>

namespace sacg {

const char* to_string(ScgStop reason) {
  switch (reason) {
    case ScgStop::gradient_small: return "gradient_small";
    case ScgStop::max_iterations: return "max_iterations";
    case ScgStop::lambda_overflow: return "lambda_overflow";
    case ScgStop::callback_stop: return "callback_stop";
  }
  return "?";
}

namespace {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

}  // namespace

ScgResult scg_minimize(const ObjectiveOracle& oracle, Vector w0, const ScgConfig& config) {
  const std::size_t nw = oracle.dimension();
  if (w0.size() != nw) throw std::invalid_argument("starting point has wrong dimension");
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (config.gradient_tolerance <= 0.0 || config.initial_lambda <= 0.0)
    throw std::invalid_argument("tolerances must be positive");

  ScgState st;
  st.w = std::move(w0);
  Vector grad;
  st.E_w = oracle.value_and_gradient(st.w, grad);
  st.r.resize(nw);
  for (std::size_t i = 0; i < nw; ++i) st.r[i] = -grad[i];
  st.p = st.r;
  st.s.assign(nw, 0.0);
  st.lambda = config.initial_lambda;
  st.lambda_bar = 0.0;
  st.success = true;

  ScgResult result;
  result.best_w = st.w;
  result.best_E = st.E_w;
  result.reason = ScgStop::max_iterations;

  auto finish = [&](ScgStop reason) {
    result.reason = reason;
    result.w = st.w;
    result.E = st.E_w;
    result.iterations = st.passes;
    result.accepted_steps = st.k;
    return result;
  };

  if (norm(st.r) < config.gradient_tolerance) return finish(ScgStop::gradient_small);

  Vector trial(nw), r_old(nw);

  while (st.passes < config.max_iterations) {
    ++st.passes;
    st.accepted = false;
    st.curvature_fixed = false;

    double p2 = dot(st.p, st.p);
    if (p2 == 0.0) {
      // Degenerate direction; fall back to steepest descent once.
      st.p = st.r;
      st.lambda = config.initial_lambda;
      st.lambda_bar = 0.0;
      st.success = true;
      p2 = dot(st.p, st.p);
      if (p2 == 0.0) return finish(ScgStop::gradient_small);
    }

    // Second-order information is reused on retries after a rejection;
    // delta then carries the damping already applied, and lambda_bar marks
    // how much of lambda it contains.
    if (st.success) {
      oracle.hessian_vector(st.w, st.p, st.s);
      st.delta = dot(st.p, st.s);
    }
    st.delta += (st.lambda - st.lambda_bar) * p2;

    if (st.delta <= 0.0) {
      // Raise lambda until the damped curvature is positive.
      st.lambda_bar = 2.0 * (st.lambda - st.delta / p2);
      st.delta = -st.delta + st.lambda * p2;
      st.lambda = st.lambda_bar;
      st.curvature_fixed = true;
    }
    if (!(st.delta > 0.0)) throw std::logic_error("scg: curvature not positive after scaling");

    st.mu = dot(st.p, st.r);
    if (st.mu == 0.0) {
      // Direction orthogonal to the gradient carries no descent; restart.
      st.p = st.r;
      st.lambda = config.initial_lambda;
      st.lambda_bar = 0.0;
      st.success = true;
      if (norm(st.r) < config.gradient_tolerance) return finish(ScgStop::gradient_small);
      continue;
    }
    st.alpha = st.mu / st.delta;

    for (std::size_t i = 0; i < nw; ++i) trial[i] = st.w[i] + st.alpha * st.p[i];
    const double E_trial = oracle.value(trial);
    st.Delta = 2.0 * st.delta * (st.E_w - E_trial) / (st.mu * st.mu);

    bool restarted = false;
    if (st.Delta >= 0.0) {
      // Accepted: move, refresh the gradient, then either restart or build
      // the next conjugate direction.
      const bool was_failure_retry = !st.success;
      st.accepted = true;
      st.w.swap(trial);
      st.E_w = E_trial;
      oracle.value_and_gradient(st.w, grad);
      r_old.swap(st.r);
      st.r.resize(nw);
      for (std::size_t i = 0; i < nw; ++i) st.r[i] = -grad[i];
      if (st.E_w < result.best_E) {
        result.best_E = st.E_w;
        result.best_w = st.w;
      }

      if (norm(st.r) < config.gradient_tolerance) {
        ++st.k;
        if (config.on_iteration) config.on_iteration(st);
        return finish(ScgStop::gradient_small);
      }

      if (was_failure_retry || st.k % static_cast<int>(nw) == 0) {
        st.p = st.r;
        st.lambda = config.initial_lambda;
        st.lambda_bar = 0.0;
        st.success = true;
        ++st.k;
        restarted = true;
      } else {
        st.beta = (dot(st.r, st.r) - dot(st.r, r_old)) / st.mu;
        for (std::size_t i = 0; i < nw; ++i) st.p[i] = st.r[i] + st.beta * st.p[i];
        if (st.Delta >= 0.75 && !config.freeze_lambda) st.lambda *= 0.5;
      }
    } else {
      // Rejected: keep w, remember lambda so the retry adds only the
      // increment, and mark the failure.
      st.lambda_bar = st.lambda;
      st.success = false;
    }

    if (!restarted) {
      if (st.Delta < 0.25 && !config.freeze_lambda) st.lambda *= 4.0;
      if (!st.success && st.lambda > config.lambda_cap) {
        if (config.on_iteration) config.on_iteration(st);
        return finish(ScgStop::lambda_overflow);
      }
      if (st.success) {
        st.lambda_bar = 0.0;
        ++st.k;
      }
    }

    if (config.on_iteration && !config.on_iteration(st)) return finish(ScgStop::callback_stop);
  }

  return finish(ScgStop::max_iterations);
}

}  // namespace sacg
