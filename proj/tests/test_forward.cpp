#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sacg/forward.hpp"
#include "sacg/rng.hpp"

using namespace sacg;

TEST_CASE("sigmoid fixed points and symmetry") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-15));
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-40.0, 40.0);
    CHECK(sigmoid(x) + sigmoid(-x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("sigmoid saturates without overflow at any finite input") {
  CHECK(sigmoid(1e308) == 1.0);
  CHECK(sigmoid(-1e308) == 0.0);
  CHECK(std::isfinite(sigmoid(710.0)));
  CHECK(std::isfinite(sigmoid(-710.0)));
  double prev = -1.0;
  for (double x = -30.0; x <= 30.0; x += 0.25) {
    const double y = sigmoid(x);
    CHECK(y > prev);  // strictly monotone over the unsaturated range
    prev = y;
  }
}

TEST_CASE("sigmoid_deriv matches a central difference of sigmoid") {
  const double h = 1e-4;
  for (double x = -10.0; x <= 10.0; x += 0.05) {
    const double fd = (sigmoid(x + h) - sigmoid(x - h)) / (2.0 * h);
    CHECK(std::fabs(sigmoid_deriv(sigmoid(x)) - fd) < 1e-8);
  }
}

TEST_CASE("sigmoid_second_deriv matches a central difference of the derivative") {
  const double h = 1e-4;
  for (double x = -10.0; x <= 10.0; x += 0.05) {
    const double above = sigmoid_deriv(sigmoid(x + h));
    const double below = sigmoid_deriv(sigmoid(x - h));
    const double fd = (above - below) / (2.0 * h);
    CHECK(std::fabs(sigmoid_second_deriv(sigmoid(x)) - fd) < 1e-7);
  }
}

TEST_CASE("zero weights push every computing neuron to 0.5") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  const Vector w(t.weight_count(), 0.0);
  const ForwardTrace trace = forward(t, w, std::vector<double>{0.3, -1.2});
  for (int layer = 1; layer < t.layer_count(); ++layer)
    for (int c = 0; c < t.computing_count(layer); ++c) {
      CHECK(trace.x[t.layer_offset(layer) + c] == 0.0);
      CHECK(trace.y[t.layer_offset(layer) + c] == 0.5);
    }
  CHECK(output_vector(trace, t) == Vector{0.5, 0.5, 0.5});
}

TEST_CASE("single-edge network computes one weighted sum") {
  const NetworkTopology t = NetworkTopology::build(1, 2, 1, 0);
  Vector w(t.weight_count(), 0.0);
  w[t.weight_index(1, 3)] = 1.0;
  const ForwardTrace trace = forward(t, w, std::vector<double>{2.0});
  CHECK(trace.x[2] == 2.0);
  CHECK(trace.y[2] == doctest::Approx(sigmoid(2.0)).epsilon(1e-15));
}

TEST_CASE("input layer carries features plus the bias 1") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  const Vector w(t.weight_count(), 0.0);
  const ForwardTrace trace = forward(t, w, std::vector<double>{0.25, -4.0});
  CHECK(trace.y[0] == 0.25);
  CHECK(trace.y[1] == -4.0);
  CHECK(trace.y[2] == 1.0);
  CHECK(trace.y[5] == 1.0);  // first-layer bias
  CHECK(trace.y[9] == 1.0);  // second-layer bias
}

TEST_CASE("forward rejects a feature-count mismatch") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  const Vector w(t.weight_count(), 0.0);
  CHECK_THROWS_AS(forward(t, w, std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(forward(t, Vector(5, 0.0), std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("argmax_class picks the top output and flags near-ties") {
  auto near_one_hot = std::vector<double>{0.999, 1e-10, 1e-19};
  CHECK(argmax_class(near_one_hot) == std::pair<int, bool>{1, false});

  auto tie = std::vector<double>{0.5, 0.5, 0.5};
  CHECK(argmax_class(tie) == std::pair<int, bool>{1, true});

  auto close = std::vector<double>{0.4, 0.4 + 5e-7, 0.1};
  const auto [label, ambiguous] = argmax_class(close);
  CHECK(label == 2);
  CHECK(ambiguous);

  auto single = std::vector<double>{0.3};
  CHECK(argmax_class(single) == std::pair<int, bool>{1, false});
}

TEST_CASE("classify with zero weights ties toward class 1") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  const Vector w(t.weight_count(), 0.0);
  const Classification c = classify(t, w, std::vector<double>{1.0, 1.0});
  CHECK(c.class_label == 1);
  CHECK(c.ambiguous);
  CHECK(c.outputs == Vector{0.5, 0.5, 0.5});
}

TEST_CASE("argmax is invariant under a strictly monotone transform") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> outputs(3);
    for (double& o : outputs) o = rng.uniform01();
    std::vector<double> squashed(3);
    for (int i = 0; i < 3; ++i) squashed[i] = std::exp(2.0 * outputs[i]) - 0.5;
    CHECK(argmax_class(outputs).first == argmax_class(squashed).first);
  }
}
