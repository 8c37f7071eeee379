#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "sacg/rng.hpp"
#include "sacg/topology.hpp"

using sacg::NetworkTopology;

TEST_CASE("urinary-steroid network shape: d=2, n=3, 2 hidden layers of width 4") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  CHECK(t.layer_sizes() == std::vector<int>{3, 3, 4, 3});
  CHECK(t.neuron_count() == 13);
  // edges into computing neurons: 3*2 + 3*3 + 4*3
  CHECK(t.weight_count() == 27);
  CHECK(t.first_label(3) == 11);
  CHECK(t.last_label(3) == 13);
}

TEST_CASE("wine network shape: d=13, n=3, widths 14/15") {
  const NetworkTopology t = NetworkTopology::build(13, 3, 2, 15);
  CHECK(t.layer_sizes() == std::vector<int>{14, 14, 15, 3});
  // 14*13 + 14*14 + 15*3
  CHECK(t.weight_count() == 423);
}

TEST_CASE("minimal single-hidden-layer network") {
  const NetworkTopology t = NetworkTopology::build(1, 2, 1, 0);
  CHECK(t.layer_sizes() == std::vector<int>{2, 2, 2});
  CHECK(t.weight_count() == 6);
  CHECK(t.neuron_count() == 6);
}

TEST_CASE("construction rejects bad shapes") {
  CHECK_THROWS_AS(NetworkTopology::build(0, 3, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(NetworkTopology::build(2, 0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(NetworkTopology::build(2, 3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(NetworkTopology::build(2, 3, 0, 4), std::invalid_argument);
}

TEST_CASE("weight_index canonical order on the [2,2,2] network") {
  const NetworkTopology t = NetworkTopology::build(1, 2, 1, 0);
  CHECK(t.weight_index(1, 3) == 0);  // first weight
  CHECK(t.weight_index(2, 3) == 1);
  CHECK(t.weight_index(3, 5) == 2);
  CHECK(t.weight_index(4, 5) == 3);
  CHECK(t.weight_index(3, 6) == 4);
  CHECK(t.weight_index(4, 6) == 5);  // last weight
  // label 4 is the first layer's bias neuron: it feeds forward but takes no input
  CHECK_THROWS_AS(t.weight_index(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(t.weight_index(1, 5), std::invalid_argument);  // skips a layer
  CHECK_THROWS_AS(t.weight_index(3, 1), std::invalid_argument);  // into the input layer
}

TEST_CASE("weight_index is a bijection with weight_endpoints as inverse") {
  sacg::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const int n = 1 + static_cast<int>(rng.below(4));
    const int hidden = 1 + static_cast<int>(rng.below(3));
    const int width = 2 + static_cast<int>(rng.below(4));
    const NetworkTopology t = NetworkTopology::build(d, n, hidden, width);

    std::set<int> seen;
    for (int index = 0; index < t.weight_count(); ++index) {
      const auto [source, dest] = t.weight_endpoints(index);
      CHECK(t.weight_index(source, dest) == index);
      seen.insert(index);
    }
    CHECK(static_cast<int>(seen.size()) == t.weight_count());
  }
}

TEST_CASE("layer label ranges partition 1..nq") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  int expected = 1;
  for (int layer = 0; layer < t.layer_count(); ++layer) {
    CHECK(t.first_label(layer) == expected);
    expected = t.last_label(layer) + 1;
  }
  CHECK(expected == t.neuron_count() + 1);
  for (int label = 1; label <= t.neuron_count(); ++label) {
    const int layer = t.layer_of_label(label);
    CHECK(label >= t.first_label(layer));
    CHECK(label <= t.last_label(layer));
  }
}

TEST_CASE("bias neurons are the last of every non-output layer") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  CHECK(t.is_bias(3));
  CHECK(t.is_bias(6));
  CHECK(t.is_bias(10));
  CHECK_FALSE(t.is_bias(1));
  CHECK_FALSE(t.is_bias(13));  // output neurons are never bias
}
