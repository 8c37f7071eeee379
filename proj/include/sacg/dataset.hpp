#ifndef SACG_DATASET_HPP
#define SACG_DATASET_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sacg/topology.hpp"

namespace sacg {

struct Pattern {
  Vector features;
  int class_label = 0;  // 1..n; 0 = unlabeled (classify-only)
  std::string tag;

  bool labeled() const { return class_label > 0; }
};

// Per-column record of what was applied to the stored features, in
// application order: natural log first, then (v - mean) / stddev. Applying
// the record to raw source values reproduces the stored features exactly.
struct ColumnTransform {
  bool log_applied = false;
  bool standardized = false;
  double mean = 0.0;
  double stddev = 1.0;

  double apply(double v) const;
};

struct Dataset {
  int d = 0;
  int n = 0;  // 0 when no pattern is labeled
  std::vector<Pattern> patterns;
  std::vector<ColumnTransform> transforms;   // size d
  std::vector<std::string> class_names;      // optional, size n when present

  std::size_t size() const { return patterns.size(); }
  bool fully_labeled() const;
  // Label histogram, index 0 unused.
  std::vector<int> class_counts() const;
};

enum class LabelPosition { first, last, absent };

struct CsvSchema {
  LabelPosition label = LabelPosition::last;
  char delimiter = ',';
};

// Parses delimiter-separated numeric rows; tolerant of leading-dot decimals
// such as ".28". d is inferred from the first row and n from the largest
// label seen. Errors name the 1-based line (and field) at fault.
Dataset load_csv(std::istream& in, const CsvSchema& schema);
Dataset load_csv_file(const std::string& path, const CsvSchema& schema);

// Features printed with 9 significant digits.
void write_csv(const Dataset& dataset, std::ostream& out, const CsvSchema& schema);

// Natural log of the selected 0-based columns; all selected values must be
// strictly positive.
Dataset log_transform(const Dataset& dataset, const std::vector<int>& columns);

struct StandardizeResult {
  Dataset data;
  std::vector<ColumnTransform> record;  // composed transforms, size d
  std::vector<std::string> warnings;    // zero-variance columns passed through
};

// Shifts/scales every column to mean 0, stddev 1 (population convention,
// divisor N). Requires at least two patterns.
StandardizeResult standardize(const Dataset& dataset);

// Maps raw source features through a transform record (e.g. the one stored
// in a trained model) so holdout data matches the training representation.
Dataset apply_transforms(const Dataset& dataset, const std::vector<ColumnTransform>& record);

// One-hot target for a 1-based class label.
Vector desired_response(int class_label, int n);

struct PatternResult {
  std::string tag;
  int actual = 0;
  int predicted = 0;
  bool ambiguous = false;
  Vector outputs;
};

struct ClassReport {
  std::vector<int> totals;    // size n
  std::vector<int> correct;   // size n
  std::vector<PatternResult> results;

  double percentage(int class_label) const;  // 100 * correct / total
  double overall_accuracy() const;
};

ClassReport evaluate(const NetworkTopology& topology, const Vector& weights,
                     const Dataset& dataset);

// The 21 labeled urinary-steroid patterns (log scale, classes adenoma /
// bilateral hyperplasia / carcinoma) and the six unknowns u1..u6.
Dataset cushing_training_data();
Dataset cushing_unknown_data();

// key=value description of a CSV source: schema, optional 1-based line
// ranges ("lines = 1-50,60-119"), optional expected d/n, and training
// transform directives. Paths are resolved relative to the manifest.
struct DatasetManifest {
  std::string source;
  CsvSchema schema;
  std::vector<std::pair<int, int>> line_ranges;  // inclusive; empty = all lines
  std::optional<int> expect_d;
  std::optional<int> expect_n;
  std::vector<int> log_columns;  // 0-based
  bool standardize = false;
};

DatasetManifest load_manifest(const std::string& path);
Dataset load_from_manifest(const DatasetManifest& manifest, const std::string& manifest_path);

}  // namespace sacg

#endif
