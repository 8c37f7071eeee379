#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sacg/dataset.hpp"
#include "sacg/forward.hpp"

using namespace sacg;

TEST_CASE("load_csv parses an unlabeled wine-style line with a leading-dot decimal") {
  std::istringstream in("4.23,1.71,2.43,15.6,127,2.8,3.06,.28,2.29,5.64,1.04,3.92,1065\n");
  const Dataset ds = load_csv(in, {LabelPosition::absent, ','});
  REQUIRE(ds.size() == 1);
  CHECK(ds.d == 13);
  CHECK(ds.n == 0);
  CHECK(ds.patterns[0].features[0] == 4.23);
  CHECK(ds.patterns[0].features[7] == 0.28);
  CHECK(ds.patterns[0].features[12] == 1065.0);
  CHECK_FALSE(ds.patterns[0].labeled());
}

TEST_CASE("load_csv maps a leading label column") {
  std::istringstream in("1,0.5,0.25\n2, .75 , 1.5\n");
  const Dataset ds = load_csv(in, {LabelPosition::first, ','});
  REQUIRE(ds.size() == 2);
  CHECK(ds.d == 2);
  CHECK(ds.n == 2);
  CHECK(ds.patterns[0].class_label == 1);
  CHECK(ds.patterns[0].features == Vector{0.5, 0.25});
  CHECK(ds.patterns[1].class_label == 2);
  CHECK(ds.patterns[1].features == Vector{0.75, 1.5});
}

TEST_CASE("load_csv errors carry line and column positions") {
  std::istringstream bad_number("a,b\n");
  try {
    load_csv(bad_number, {LabelPosition::absent, ','});
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    CHECK(what.find("line 1") != std::string::npos);
    CHECK(what.find("column 1") != std::string::npos);
  }

  std::istringstream bad_arity("1,2,3\n1,2\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_arity, {LabelPosition::absent, ','}),
                       doctest::Contains("line 2"), std::runtime_error);

  std::istringstream bad_label("0,1,2\n");
  CHECK_THROWS_AS(load_csv(bad_label, {LabelPosition::first, ','}), std::runtime_error);

  std::istringstream fractional_label("1.5,1,2\n");
  CHECK_THROWS_AS(load_csv(fractional_label, {LabelPosition::first, ','}), std::runtime_error);
}

TEST_CASE("csv round-trips to 9 significant digits") {
  std::istringstream in(
      "3,1.23456789,0.000123456789,12345.6789\n"
      "1,-0.987654321,2.5,1e-30\n");
  const Dataset first = load_csv(in, {LabelPosition::first, ','});
  std::ostringstream text;
  write_csv(first, text, {LabelPosition::first, ','});
  std::istringstream again(text.str());
  const Dataset second = load_csv(again, {LabelPosition::first, ','});
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(second.patterns[i].class_label == first.patterns[i].class_label);
    for (int j = 0; j < first.d; ++j) {
      const double a = first.patterns[i].features[j];
      const double b = second.patterns[i].features[j];
      CHECK(std::fabs(a - b) <= 1e-8 * std::max(std::fabs(a), 1e-300));
    }
  }
}

TEST_CASE("log_transform applies natural logs and records them") {
  std::istringstream in("3.1,5\n1.0,5\n0.10,5\n");
  Dataset ds = load_csv(in, {LabelPosition::absent, ','});
  ds = log_transform(ds, {0});
  CHECK(ds.patterns[0].features[0] == doctest::Approx(1.1314021).epsilon(1e-6));
  CHECK(ds.patterns[1].features[0] == doctest::Approx(0.0));
  CHECK(ds.patterns[2].features[0] == doctest::Approx(-2.30258509).epsilon(1e-6));
  CHECK(ds.patterns[0].features[1] == 5.0);
  CHECK(ds.transforms[0].log_applied);
  CHECK_FALSE(ds.transforms[1].log_applied);

  std::istringstream nonpositive("-1,2\n");
  Dataset bad = load_csv(nonpositive, {LabelPosition::absent, ','});
  CHECK_THROWS_AS(log_transform(bad, {0}), std::invalid_argument);
}

TEST_CASE("standardize centers and scales with the population convention") {
  std::istringstream in("1,7\n3,7\n");
  const Dataset ds = load_csv(in, {LabelPosition::absent, ','});
  const StandardizeResult result = standardize(ds);
  CHECK(result.data.patterns[0].features[0] == -1.0);
  CHECK(result.data.patterns[1].features[0] == 1.0);
  CHECK(result.record[0].mean == 2.0);
  CHECK(result.record[0].stddev == 1.0);
  // zero-variance column passes through with a warning
  CHECK(result.data.patterns[0].features[1] == 7.0);
  CHECK_FALSE(result.record[1].standardized);
  REQUIRE(result.warnings.size() == 1);

  CHECK_THROWS_AS(standardize(Dataset{1, 0, {Pattern{{1.0}, 0, ""}}, {{}}, {}}),
                  std::invalid_argument);
}

TEST_CASE("the recorded transform reproduces the standardized set bit-exactly") {
  std::istringstream in("1,10\n2,40\n3,90\n4,160\n");
  const Dataset raw = load_csv(in, {LabelPosition::absent, ','});
  const StandardizeResult result = standardize(raw);
  const Dataset replayed = apply_transforms(raw, result.record);
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (int j = 0; j < raw.d; ++j)
      CHECK(replayed.patterns[i].features[j] == result.data.patterns[i].features[j]);
  // applying the record twice is not the identity
  const Dataset twice = apply_transforms(result.data, result.record);
  CHECK(twice.patterns[0].features[0] != result.data.patterns[0].features[0]);
}

TEST_CASE("desired_response is one-hot") {
  CHECK(desired_response(2, 3) == Vector{0.0, 1.0, 0.0});
  CHECK(desired_response(1, 1) == Vector{1.0});
  CHECK_THROWS_AS(desired_response(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(desired_response(0, 3), std::invalid_argument);
}

TEST_CASE("embedded training data matches the published table") {
  const Dataset train = cushing_training_data();
  CHECK(train.size() == 21);
  CHECK(train.d == 2);
  CHECK(train.n == 3);
  const std::vector<int> counts = train.class_counts();
  CHECK(counts[1] == 6);
  CHECK(counts[2] == 10);
  CHECK(counts[3] == 5);
  CHECK(train.patterns[0].tag == "a1");
  CHECK(train.patterns[0].features == Vector{1.1314021, 2.45958884});
  CHECK(train.patterns[20].tag == "c5");

  const Dataset unknown = cushing_unknown_data();
  CHECK(unknown.size() == 6);
  CHECK(unknown.patterns[4].tag == "u5");
  CHECK(unknown.patterns[4].features == Vector{3.4011974, -2.3025851});
  CHECK_FALSE(unknown.patterns[0].labeled());
  CHECK(train.class_names.size() == 3);
}

TEST_CASE("evaluate with zero weights predicts class 1 everywhere, flagged ambiguous") {
  const Dataset train = cushing_training_data();
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  const Vector w(t.weight_count(), 0.0);
  const ClassReport report = evaluate(t, w, train);
  CHECK(report.totals == std::vector<int>{6, 10, 5});
  CHECK(report.correct == std::vector<int>{6, 0, 0});
  for (const PatternResult& r : report.results) {
    CHECK(r.predicted == 1);
    CHECK(r.ambiguous);
  }
  CHECK(report.percentage(1) == 100.0);
  CHECK(report.percentage(2) == 0.0);
  CHECK(report.overall_accuracy() == doctest::Approx(6.0 / 21.0));
}

TEST_CASE("evaluate rejects unlabeled patterns") {
  const NetworkTopology t = NetworkTopology::build(2, 3, 2, 4);
  const Vector w(t.weight_count(), 0.0);
  CHECK_THROWS_AS(evaluate(t, w, cushing_unknown_data()), std::invalid_argument);
}

TEST_CASE("manifest selects line ranges and validates shape") {
  const std::string dir = "manifest_test_dir";
  std::filesystem::create_directories(dir);
  {
    std::ofstream data(dir + "/numbers.csv");
    for (int i = 1; i <= 10; ++i) data << (i % 2 + 1) << "," << i << "," << 10 * i << "\n";
  }
  {
    std::ofstream manifest(dir + "/split.manifest");
    manifest << "# toy split\n"
             << "source = numbers.csv\n"
             << "label = first\n"
             << "d = 2\n"
             << "n = 2\n"
             << "lines = 1-3,8-10\n";
  }
  const DatasetManifest m = load_manifest(dir + "/split.manifest");
  CHECK(m.standardize == false);
  const Dataset ds = load_from_manifest(m, dir + "/split.manifest");
  REQUIRE(ds.size() == 6);
  CHECK(ds.patterns[0].features[0] == 1.0);
  CHECK(ds.patterns[3].features[0] == 8.0);
  CHECK(ds.d == 2);
  CHECK(ds.n == 2);

  {
    std::ofstream manifest(dir + "/bad.manifest");
    manifest << "source = numbers.csv\nlabel = first\nd = 5\n";
  }
  CHECK_THROWS_AS(load_from_manifest(load_manifest(dir + "/bad.manifest"), dir + "/bad.manifest"),
                  std::runtime_error);
  std::filesystem::remove_all(dir);
}
