#include "sacg/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sacg/forward.hpp"

namespace sacg {

double ColumnTransform::apply(double v) const {
  if (log_applied) v = std::log(v);
  if (standardized) v = (v - mean) / stddev;
  return v;
}

bool Dataset::fully_labeled() const {
  return std::all_of(patterns.begin(), patterns.end(),
                     [](const Pattern& p) { return p.labeled(); });
}

std::vector<int> Dataset::class_counts() const {
  std::vector<int> counts(n + 1, 0);
  for (const Pattern& p : patterns)
    if (p.labeled()) ++counts[p.class_label];
  return counts;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, int line, int column) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v))
    parse_fail(line, "column " + std::to_string(column) + ": not a number: '" + field + "'");
  return v;
}

int parse_label(const std::string& field, int line, int column) {
  const double v = parse_number(field, line, column);
  const int label = static_cast<int>(v);
  if (static_cast<double>(label) != v || label < 1)
    parse_fail(line, "column " + std::to_string(column) + ": class label must be a positive integer, got '" + field + "'");
  return label;
}

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  for (std::string& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Dataset load_csv(std::istream& in, const CsvSchema& schema) {
  Dataset ds;
  std::string line;
  int lineno = 0;
  int arity = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const std::vector<std::string> fields = split_fields(line, schema.delimiter);
    if (arity < 0) {
      arity = static_cast<int>(fields.size());
      const int label_fields = schema.label == LabelPosition::absent ? 0 : 1;
      if (arity <= label_fields) parse_fail(lineno, "too few fields");
      ds.d = arity - label_fields;
    } else if (static_cast<int>(fields.size()) != arity) {
      parse_fail(lineno, "expected " + std::to_string(arity) + " fields, got " +
                             std::to_string(fields.size()));
    }

    Pattern p;
    int first_feature = 0;
    int feature_count = arity;
    if (schema.label == LabelPosition::first) {
      p.class_label = parse_label(fields[0], lineno, 1);
      first_feature = 1;
      feature_count = arity - 1;
    } else if (schema.label == LabelPosition::last) {
      p.class_label = parse_label(fields[arity - 1], lineno, arity);
      feature_count = arity - 1;
    }
    p.features.reserve(feature_count);
    for (int j = 0; j < feature_count; ++j)
      p.features.push_back(parse_number(fields[first_feature + j], lineno, first_feature + j + 1));
    ds.n = std::max(ds.n, p.class_label);
    ds.patterns.push_back(std::move(p));
  }
  ds.transforms.assign(ds.d, ColumnTransform{});
  return ds;
}

Dataset load_csv_file(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  try {
    return load_csv(in, schema);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

namespace {
std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
}  // namespace

void write_csv(const Dataset& dataset, std::ostream& out, const CsvSchema& schema) {
  for (const Pattern& p : dataset.patterns) {
    std::string line;
    auto append = [&](const std::string& s) {
      if (!line.empty()) line.push_back(schema.delimiter);
      line += s;
    };
    if (schema.label == LabelPosition::first) append(std::to_string(p.class_label));
    for (double v : p.features) append(format_g9(v));
    if (schema.label == LabelPosition::last) append(std::to_string(p.class_label));
    out << line << '\n';
  }
}

Dataset log_transform(const Dataset& dataset, const std::vector<int>& columns) {
  Dataset out = dataset;
  for (int col : columns) {
    if (col < 0 || col >= dataset.d)
      throw std::invalid_argument("log column out of range: " + std::to_string(col));
    for (std::size_t i = 0; i < out.patterns.size(); ++i) {
      double& v = out.patterns[i].features[col];
      if (v <= 0.0)
        throw std::invalid_argument("non-positive value " + format_g9(v) + " in column " +
                                    std::to_string(col) + " (pattern " + std::to_string(i + 1) +
                                    "); cannot take log");
      v = std::log(v);
    }
    out.transforms[col].log_applied = true;
  }
  return out;
}

StandardizeResult standardize(const Dataset& dataset) {
  const std::size_t count = dataset.patterns.size();
  if (count < 2) throw std::invalid_argument("standardize needs at least two patterns");

  StandardizeResult result;
  result.data = dataset;
  for (int col = 0; col < dataset.d; ++col) {
    double mean = 0.0;
    for (const Pattern& p : dataset.patterns) mean += p.features[col];
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (const Pattern& p : dataset.patterns) {
      const double diff = p.features[col] - mean;
      var += diff * diff;
    }
    var /= static_cast<double>(count);
    const double stddev = std::sqrt(var);
    if (stddev == 0.0) {
      result.warnings.push_back("column " + std::to_string(col + 1) +
                                " has zero variance; left unchanged");
      continue;
    }
    for (Pattern& p : result.data.patterns)
      p.features[col] = (p.features[col] - mean) / stddev;
    result.data.transforms[col].standardized = true;
    result.data.transforms[col].mean = mean;
    result.data.transforms[col].stddev = stddev;
  }
  result.record = result.data.transforms;
  return result;
}

Dataset apply_transforms(const Dataset& dataset, const std::vector<ColumnTransform>& record) {
  if (static_cast<int>(record.size()) != dataset.d)
    throw std::invalid_argument("transform record has " + std::to_string(record.size()) +
                                " columns, dataset has " + std::to_string(dataset.d));
  Dataset out = dataset;
  for (Pattern& p : out.patterns)
    for (int col = 0; col < out.d; ++col) p.features[col] = record[col].apply(p.features[col]);
  out.transforms = record;
  return out;
}

Vector desired_response(int class_label, int n) {
  if (class_label < 1 || class_label > n)
    throw std::invalid_argument("class label " + std::to_string(class_label) +
                                " outside 1.." + std::to_string(n));
  Vector r(n, 0.0);
  r[class_label - 1] = 1.0;
  return r;
}

double ClassReport::percentage(int class_label) const {
  const int t = totals[class_label - 1];
  return t == 0 ? 0.0 : 100.0 * correct[class_label - 1] / t;
}

double ClassReport::overall_accuracy() const {
  int t = 0, c = 0;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    t += totals[i];
    c += correct[i];
  }
  return t == 0 ? 0.0 : static_cast<double>(c) / t;
}

ClassReport evaluate(const NetworkTopology& topology, const Vector& weights,
                     const Dataset& dataset) {
  const int n = topology.class_count();
  ClassReport report;
  report.totals.assign(n, 0);
  report.correct.assign(n, 0);
  for (const Pattern& p : dataset.patterns) {
    if (!p.labeled()) throw std::invalid_argument("evaluate requires labeled patterns");
    if (p.class_label > n)
      throw std::invalid_argument("pattern label " + std::to_string(p.class_label) +
                                  " exceeds class count " + std::to_string(n));
    const Classification c = classify(topology, weights, p.features);
    PatternResult r;
    r.tag = p.tag;
    r.actual = p.class_label;
    r.predicted = c.class_label;
    r.ambiguous = c.ambiguous;
    r.outputs = c.outputs;
    ++report.totals[p.class_label - 1];
    if (c.class_label == p.class_label) ++report.correct[p.class_label - 1];
    report.results.push_back(std::move(r));
  }
  return report;
}

namespace {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::pair<int, int>> parse_line_ranges(const std::string& text) {
  std::vector<std::pair<int, int>> ranges;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    int lo, hi;
    try {
      if (dash == std::string::npos) {
        lo = hi = std::stoi(part);
      } else {
        lo = std::stoi(part.substr(0, dash));
        hi = std::stoi(part.substr(dash + 1));
      }
    } catch (const std::exception&) {
      throw ManifestError("bad line range: '" + part + "'");
    }
    if (lo < 1 || hi < lo) throw ManifestError("bad line range: '" + part + "'");
    ranges.emplace_back(lo, hi);
  }
  return ranges;
}

}  // namespace

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  DatasetManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "source") {
        m.source = value;
      } else if (key == "delimiter") {
        if (value.size() != 1) throw ManifestError("delimiter must be a single character");
        m.schema.delimiter = value[0];
      } else if (key == "label") {
        if (value == "first") m.schema.label = LabelPosition::first;
        else if (value == "last") m.schema.label = LabelPosition::last;
        else if (value == "absent" || value == "none") m.schema.label = LabelPosition::absent;
        else throw ManifestError("label must be first, last, or absent");
      } else if (key == "lines") {
        m.line_ranges = parse_line_ranges(value);
      } else if (key == "d") {
        m.expect_d = std::stoi(value);
      } else if (key == "n") {
        m.expect_n = std::stoi(value);
      } else if (key == "log_columns") {
        for (auto [lo, hi] : parse_line_ranges(value))
          for (int c = lo; c <= hi; ++c) m.log_columns.push_back(c - 1);
      } else if (key == "standardize") {
        m.standardize = value == "true" || value == "1" || value == "yes";
      } else {
        throw ManifestError("unknown key: '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (m.source.empty()) throw std::runtime_error(path + ": manifest has no source");
  return m;
}

Dataset load_from_manifest(const DatasetManifest& manifest, const std::string& manifest_path) {
  namespace fs = std::filesystem;
  fs::path source(manifest.source);
  if (source.is_relative()) source = fs::path(manifest_path).parent_path() / source;

  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open data file: " + source.string());

  std::string filtered;
  if (manifest.line_ranges.empty()) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    filtered = buffer.str();
  } else {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      for (auto [lo, hi] : manifest.line_ranges)
        if (lineno >= lo && lineno <= hi) {
          filtered += line;
          filtered += '\n';
          break;
        }
    }
  }
  std::istringstream feed(filtered);
  Dataset ds = load_csv(feed, manifest.schema);
  if (manifest.expect_d && *manifest.expect_d != ds.d)
    throw std::runtime_error(source.string() + ": expected d=" + std::to_string(*manifest.expect_d) +
                             ", data has d=" + std::to_string(ds.d));
  if (manifest.expect_n) {
    if (ds.n > *manifest.expect_n)
      throw std::runtime_error(source.string() + ": expected n=" + std::to_string(*manifest.expect_n) +
                               ", data has label " + std::to_string(ds.n));
    ds.n = *manifest.expect_n;
  }
  if (!manifest.log_columns.empty()) ds = log_transform(ds, manifest.log_columns);
  return ds;
}

namespace {

struct CushingRow {
  const char* tag;
  int label;  // 0 = unknown
  double log_tetrahydrocortisone;
  double log_pregnanetriol;
};

// Log-scale urinary excretion rates; classes: 1 adenoma, 2 bilateral
// hyperplasia, 3 carcinoma.
constexpr CushingRow kCushingRows[] = {
    {"a1", 1, 1.1314021, 2.45958884},   {"a2", 1, 1.0986123, 0.26236426},
    {"a3", 1, 0.6418539, -2.30258509},  {"a4", 1, 1.3350011, -3.21887582},
    {"a5", 1, 1.4109870, 0.09531018},   {"a6", 1, 0.6418539, -0.91629073},
    {"b1", 2, 2.1162555, 0.00000000},   {"b2", 2, 1.3350011, -1.60943791},
    {"b3", 2, 1.3609766, -0.51082562},  {"b4", 2, 2.0541237, 0.18232156},
    {"b5", 2, 2.2082744, -0.51082562},  {"b6", 2, 2.7343675, 1.28093385},
    {"b7", 2, 2.0412203, 0.47000363},   {"b8", 2, 1.8718022, -0.91629073},
    {"b9", 2, 1.7404662, -0.91629073},  {"b10", 2, 2.6100698, 0.47000363},
    {"c1", 3, 2.3223877, 1.85629799},   {"c2", 3, 2.2192035, 2.06686276},
    {"c3", 3, 2.2617631, 1.13140211},   {"c4", 3, 3.9852735, 0.91629073},
    {"c5", 3, 2.7600099, 2.02814825},
};

constexpr CushingRow kCushingUnknownRows[] = {
    {"u1", 0, 1.6292405, -0.9162907}, {"u2", 0, 2.5572273, 1.6094379},
    {"u3", 0, 2.5649494, -0.2231436}, {"u4", 0, 0.9555114, -2.3025851},
    {"u5", 0, 3.4011974, -2.3025851}, {"u6", 0, 3.0204249, -0.2231436},
};

Dataset cushing_base() {
  Dataset ds;
  ds.d = 2;
  ds.n = 3;
  ds.transforms.assign(2, ColumnTransform{});
  ds.class_names = {"adenoma", "bilateral hyperplasia", "carcinoma"};
  return ds;
}

}  // namespace

Dataset cushing_training_data() {
  Dataset ds = cushing_base();
  for (const CushingRow& row : kCushingRows) {
    Pattern p;
    p.tag = row.tag;
    p.class_label = row.label;
    p.features = {row.log_tetrahydrocortisone, row.log_pregnanetriol};
    ds.patterns.push_back(std::move(p));
  }
  return ds;
}

Dataset cushing_unknown_data() {
  Dataset ds = cushing_base();
  for (const CushingRow& row : kCushingUnknownRows) {
    Pattern p;
    p.tag = row.tag;
    p.features = {row.log_tetrahydrocortisone, row.log_pregnanetriol};
    ds.patterns.push_back(std::move(p));
  }
  return ds;
}

}  // namespace sacg
