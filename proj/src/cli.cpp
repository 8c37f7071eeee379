#include "sacg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "sacg/dataset.hpp"
#include "sacg/model_io.hpp"
#include "sacg/numcheck.hpp"
#include "sacg/objective.hpp"
#include "sacg/trainer.hpp"

namespace sacg {

namespace {

std::string g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct DataArgs {
  std::string builtin;
  std::string data_path;
  std::string schema = "label-last";
  std::string delimiter = ",";
  std::string manifest_path;
};

void add_data_options(CLI::App* cmd, DataArgs& args, const std::string& builtin_choices) {
  cmd->add_option("--builtin", args.builtin, "Embedded dataset (" + builtin_choices + ")");
  cmd->add_option("--data", args.data_path, "CSV data file");
  cmd->add_option("--schema", args.schema, "Label position: label-first, label-last, none")
      ->check(CLI::IsMember({"label-first", "label-last", "none"}));
  cmd->add_option("--delimiter", args.delimiter, "Field delimiter (default ',')");
  cmd->add_option("--manifest", args.manifest_path, "Dataset manifest file");
}

CsvSchema schema_from(const DataArgs& args) {
  CsvSchema schema;
  if (args.schema == "label-first") schema.label = LabelPosition::first;
  else if (args.schema == "label-last") schema.label = LabelPosition::last;
  else schema.label = LabelPosition::absent;
  if (args.delimiter.size() != 1) throw std::runtime_error("delimiter must be a single character");
  schema.delimiter = args.delimiter[0];
  return schema;
}

// Loads per the precedence builtin > manifest > csv; also reports whether
// the manifest asked for standardization.
Dataset load_data(const DataArgs& args, bool* manifest_standardize = nullptr) {
  if (!args.builtin.empty()) {
    if (args.builtin == "cushing") return cushing_training_data();
    if (args.builtin == "cushing-unknown") return cushing_unknown_data();
    throw std::runtime_error("unknown builtin dataset: " + args.builtin);
  }
  if (!args.manifest_path.empty()) {
    const DatasetManifest manifest = load_manifest(args.manifest_path);
    if (manifest_standardize) *manifest_standardize = manifest.standardize;
    return load_from_manifest(manifest, args.manifest_path);
  }
  if (args.data_path.empty())
    throw std::runtime_error("no input data; use --builtin, --data, or --manifest");
  return load_csv_file(args.data_path, schema_from(args));
}

std::pair<int, int> parse_hidden(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) {
      const int layers = std::stoi(text);
      if (layers != 1) throw std::runtime_error("");
      return {1, 0};
    }
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw std::runtime_error("bad --hidden value '" + text + "'; expected e.g. 2x4 or 1");
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SACG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::runtime_error("SACG_SEED is not a number: " + std::string(env));
    }
  }
  return 0;
}

std::string class_display(int label, const std::vector<std::string>& names) {
  std::string text = std::to_string(label);
  if (label >= 1 && static_cast<std::size_t>(label) <= names.size())
    text += " (" + names[label - 1] + ")";
  return text;
}

struct TrainArgs {
  DataArgs data;
  std::string layers;
  std::string hidden;
  bool standardize = false;
  std::string log_columns;
  std::optional<std::uint64_t> seed;
  std::string seeds_range;
  int max_cold_starts = 1;
  bool max_cold_starts_given = false;
  bool interactive = false;
  double eps = 1e-3;
  int iter_factor = 10;
  int k3 = 20;
  std::string model_path = "model.json";
  bool deterministic = false;
};

ModelFile model_from_training(const NetworkTopology& topology, const Dataset& dataset,
                              const TrainingReport& report) {
  ModelFile model;
  model.d = topology.input_dim();
  model.n = topology.class_count();
  model.hidden_layers = topology.hidden_layer_count();
  model.hidden_width = topology.hidden_width();
  model.transforms = dataset.transforms;
  model.class_names = dataset.class_names;
  model.weights = report.best_weights;
  model.seed = report.seed;
  model.error = report.best_error;
  model.cold_starts = report.cold_starts;
  model.reasonable = report.reasonable;
  return model;
}

int cmd_train(const TrainArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
  bool manifest_standardize = false;
  Dataset dataset = load_data(args.data, &manifest_standardize);
  if (dataset.n == 0) throw std::runtime_error("training data has no class labels");
  if (!dataset.fully_labeled()) throw std::runtime_error("training data has unlabeled rows");

  if (!args.log_columns.empty()) {
    std::vector<int> columns;
    std::stringstream ss(args.log_columns);
    std::string part;
    while (std::getline(ss, part, ',')) columns.push_back(std::stoi(part) - 1);
    dataset = log_transform(dataset, columns);
  }
  if (args.standardize || manifest_standardize) {
    StandardizeResult std_result = standardize(dataset);
    for (const std::string& warning : std_result.warnings) err << "warning: " << warning << "\n";
    dataset = std::move(std_result.data);
  }

  if (!args.layers.empty()) {
    const auto colon = args.layers.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("bad --layers value '" + args.layers + "'; expected d:n");
    const int d = std::stoi(args.layers.substr(0, colon));
    const int n = std::stoi(args.layers.substr(colon + 1));
    if (d != dataset.d || n != dataset.n)
      throw std::runtime_error("--layers " + args.layers + " does not match data (d=" +
                               std::to_string(dataset.d) + ", n=" + std::to_string(dataset.n) + ")");
  }
  const auto [hidden_layers, hidden_width] = parse_hidden(args.hidden);
  const NetworkTopology topology =
      NetworkTopology::build(dataset.d, dataset.n, hidden_layers, hidden_width);
  if (topology.weight_count() <= 10)
    err << "warning: network has only " << topology.weight_count()
        << " weights; annealing is tuned for larger problems\n";

  TrainerConfig config;
  config.target_error = args.eps;
  config.scg_iteration_factor = args.iter_factor;
  config.max_rounds = args.k3;

  const auto started = std::chrono::steady_clock::now();
  auto print_elapsed = [&] {
    if (args.deterministic) return;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    out << "elapsed=" << g9(elapsed.count()) << "s\n";
  };

  if (!args.seeds_range.empty()) {
    const auto dots = args.seeds_range.find("..");
    if (dots == std::string::npos)
      throw std::runtime_error("bad --seeds value '" + args.seeds_range + "'; expected a..b");
    const std::uint64_t first = std::stoull(args.seeds_range.substr(0, dots));
    const std::uint64_t last = std::stoull(args.seeds_range.substr(dots + 2));
    if (last < first) throw std::runtime_error("--seeds range is empty");

    std::vector<std::future<TrainingReport>> futures;
    for (std::uint64_t seed = first; seed <= last; ++seed) {
      TrainerConfig seed_config = config;
      seed_config.seed = seed;
      const int cold_starts = args.max_cold_starts;
      futures.push_back(std::async(std::launch::async, [seed_config, cold_starts, topology,
                                                        dataset] {
        AutomaticPolicy policy(cold_starts);
        return train(topology, dataset, seed_config, policy, nullptr);
      }));
    }
    std::optional<TrainingReport> best;
    for (auto& future : futures) {
      TrainingReport report = future.get();
      out << "seed=" << report.seed << " reasonable=" << (report.reasonable ? "true" : "false")
          << " E=" << g9(report.best_error) << " cold_starts=" << report.cold_starts << "\n";
      if (!best || report.best_error < best->best_error) best = std::move(report);
    }
    save_model(model_from_training(topology, dataset, *best), args.model_path);
    err << "model written to " << args.model_path << "\n";
    out << "reasonable=" << (best->reasonable ? "true" : "false") << " E=" << g9(best->best_error)
        << "\n";
    print_elapsed();
    return best->reasonable ? 0 : 2;
  }

  config.seed = args.seed ? *args.seed : default_seed();

  const bool tty = isatty(fileno(stdin)) != 0;
  std::unique_ptr<RestartPolicy> policy;
  bool automatic = true;
  if (args.max_cold_starts_given) {
    policy = std::make_unique<AutomaticPolicy>(args.max_cold_starts);
  } else if (args.interactive || tty) {
    if (!tty) {
      err << "warning: stdin is not a terminal; using the automatic policy\n";
      policy = std::make_unique<AutomaticPolicy>(args.max_cold_starts);
    } else {
      policy = std::make_unique<InteractivePolicy>(in, err);
      automatic = false;
    }
  } else {
    policy = std::make_unique<AutomaticPolicy>(args.max_cold_starts);
  }

  const TrainingReport report = train(topology, dataset, config, *policy, &out);
  save_model(model_from_training(topology, dataset, report), args.model_path);
  err << "model written to " << args.model_path << "\n";
  out << "reasonable=" << (report.reasonable ? "true" : "false") << " E=" << g9(report.best_error)
      << "\n";
  print_elapsed();
  if (report.reasonable) return 0;
  return automatic ? 2 : 0;
}

struct ClassifyArgs {
  DataArgs data;
  std::string model_path;
};

int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
  const ModelFile model = load_model(args.model_path);
  const NetworkTopology topology = model.topology();
  Dataset dataset = load_data(args.data);
  if (dataset.d != model.d)
    throw std::runtime_error("input has " + std::to_string(dataset.d) + " features but the model expects " +
                             std::to_string(model.d));
  // Builtin inputs are already in model space; raw CSV goes through the
  // model's transform record.
  if (args.data.builtin.empty()) dataset = apply_transforms(dataset, model.transforms);

  int index = 0;
  for (const Pattern& p : dataset.patterns) {
    ++index;
    const Classification c = classify(topology, model.weights, p.features);
    out << (p.tag.empty() ? "p" + std::to_string(index) : p.tag);
    for (double o : c.outputs) out << " " << g9(o);
    out << " -> " << class_display(c.class_label, model.class_names);
    if (c.ambiguous) out << " [ambiguous]";
    out << "\n";
  }
  return 0;
}

struct EvaluateArgs {
  DataArgs data;
  std::string model_path;
  bool json = false;
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const ModelFile model = load_model(args.model_path);
  const NetworkTopology topology = model.topology();
  Dataset dataset = load_data(args.data);
  if (dataset.d != model.d)
    throw std::runtime_error("input has " + std::to_string(dataset.d) + " features but the model expects " +
                             std::to_string(model.d));
  if (!dataset.fully_labeled()) throw std::runtime_error("evaluation data has unlabeled rows");
  if (dataset.n > model.n)
    throw std::runtime_error("data has " + std::to_string(dataset.n) + " classes but the model has " +
                             std::to_string(model.n));
  if (args.data.builtin.empty()) dataset = apply_transforms(dataset, model.transforms);

  const ClassReport report = evaluate(topology, model.weights, dataset);
  if (args.json) {
    nlohmann::json j;
    j["classes"] = nlohmann::json::array();
    for (int c = 1; c <= model.n; ++c)
      j["classes"].push_back({{"class", c},
                              {"total", report.totals[c - 1]},
                              {"correct", report.correct[c - 1]},
                              {"percentage", report.percentage(c)}});
    j["accuracy"] = report.overall_accuracy();
    nlohmann::json patterns = nlohmann::json::array();
    for (const PatternResult& r : report.results)
      patterns.push_back({{"tag", r.tag},
                          {"actual", r.actual},
                          {"predicted", r.predicted},
                          {"ambiguous", r.ambiguous},
                          {"outputs", r.outputs}});
    j["patterns"] = std::move(patterns);
    out << j.dump(2) << "\n";
  } else {
    for (int c = 1; c <= model.n; ++c)
      out << "Class = " << c << " Total = " << report.totals[c - 1]
          << " Correct = " << report.correct[c - 1]
          << " Percentage = " << g9(report.percentage(c)) << "\n";
  }
  return 0;
}

struct CheckArgs {
  int trials = 100;
  std::uint64_t seed = 0;
  bool json = false;
  bool inject_fault = false;
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  CheckOptions options;
  options.trials = args.trials;
  options.seed = args.seed;
  options.inject_gradient_fault = args.inject_fault;
  const std::vector<CheckReport> reports = check_random_instances(options);

  bool all_pass = true;
  if (args.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const CheckReport& r : reports) {
      j.push_back({{"name", r.name},
                   {"max_rel_error", r.max_rel_error},
                   {"rel_l2_error", r.rel_l2_error},
                   {"worst_coordinate", r.worst_coordinate},
                   {"step", r.step},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass}});
      all_pass = all_pass && r.pass;
    }
    out << j.dump(2) << "\n";
  } else {
    for (const CheckReport& r : reports) {
      char line[160];
      std::snprintf(line, sizeof line, "%-14s max_rel=%-12.4g tol=%-8.2g worst_coord=%-4d %s",
                    r.name.c_str(), r.max_rel_error, r.tolerance, r.worst_coordinate,
                    r.pass ? "pass" : "FAIL");
      out << line << "\n";
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? 0 : 3;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Neural-network classification trainer (simulated annealing + scaled conjugate gradient)"};
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a network on labeled data");
  add_data_options(train_cmd, train_args.data, "cushing");
  train_cmd->add_option("--layers", train_args.layers, "Expected d:n, validated against the data");
  train_cmd->add_option("--hidden", train_args.hidden, "Hidden shape, e.g. 2x4 = two layers of width 4")
      ->required();
  train_cmd->add_flag("--standardize", train_args.standardize, "Standardize columns to mean 0, stddev 1");
  train_cmd->add_option("--log-columns", train_args.log_columns, "1-based columns to log-transform");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = train_cmd->add_option("--seed", seed_value, "RNG seed (default $SACG_SEED or 0)");
  train_cmd->add_option("--seeds", train_args.seeds_range, "Run a seed range a..b concurrently");
  CLI::Option* mcs_opt = train_cmd->add_option("--max-cold-starts", train_args.max_cold_starts,
                                               "Automatic policy: total cold starts allowed");
  train_cmd->add_flag("--interactive", train_args.interactive, "Prompt at restart decision points");
  train_cmd->add_option("--eps", train_args.eps, "Reasonable-solution error threshold");
  train_cmd->add_option("--iter-factor", train_args.iter_factor, "Minimizer pass budget = factor * nw");
  train_cmd->add_option("--k3", train_args.k3, "Anneal+minimize rounds per cold start");
  train_cmd->add_option("--model", train_args.model_path, "Output model path");
  train_cmd->add_flag("--deterministic", train_args.deterministic, "Suppress wall-clock output");

  ClassifyArgs classify_args;
  classify_args.data.schema = "none";  // classify defaults to unlabeled rows
  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify unlabeled data with a model");
  add_data_options(classify_cmd, classify_args.data, "cushing, cushing-unknown");
  classify_cmd->add_option("--model", classify_args.model_path, "Model file")->required();

  EvaluateArgs evaluate_args;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Score a model on labeled data");
  add_data_options(evaluate_cmd, evaluate_args.data, "cushing");
  evaluate_cmd->add_option("--model", evaluate_args.model_path, "Model file")->required();
  evaluate_cmd->add_flag("--json", evaluate_args.json, "Machine-readable report");

  CheckArgs check_args;
  CLI::App* check_cmd = app.add_subcommand("check", "Verify gradients and Hessian products against finite differences");
  check_cmd->add_option("--trials", check_args.trials, "Random instances to test");
  check_cmd->add_option("--seed", check_args.seed, "RNG seed");
  check_cmd->add_flag("--json", check_args.json, "Machine-readable report");
  check_cmd->add_flag("--inject-fault", check_args.inject_fault,
                      "Test hook: corrupt one gradient component")
      ->group("");  // hidden

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (train_cmd->parsed()) {
      if (*seed_opt) train_args.seed = seed_value;
      train_args.max_cold_starts_given = static_cast<bool>(*mcs_opt);
      return cmd_train(train_args, in, out, err);
    }
    if (classify_cmd->parsed()) return cmd_classify(classify_args, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_args, out);
    if (check_cmd->parsed()) return cmd_check(check_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace sacg
