//
// Copyright 2026 The dperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dperm/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dperm/core_types.hpp"
#include "dperm/erm.hpp"
#include "dperm/errors.hpp"
#include "dperm/evaluation.hpp"
#include "dperm/intervals.hpp"
#include "dperm/io.hpp"
#include "dperm/losses.hpp"
#include "dperm/preprocess.hpp"
#include "dperm/rng.hpp"
#include "dperm/synthetic.hpp"

namespace dperm {
namespace {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel parse_log_level() {
  const char* env = std::getenv("DPERM_LOG");
  if (env == nullptr || *env == '\0') {
    return LogLevel::kInfo;
  }
  const std::string value(env);
  if (value == "error") return LogLevel::kError;
  if (value == "info") return LogLevel::kInfo;
  if (value == "debug") return LogLevel::kDebug;
  throw ConfigError("DPERM_LOG must be one of error, info, debug; got '" + value + "'");
}

struct Logger {
  LogLevel level = LogLevel::kInfo;

  void error(const std::string& msg) const { emit(LogLevel::kError, "error", msg); }
  void info(const std::string& msg) const { emit(LogLevel::kInfo, "info", msg); }
  void debug(const std::string& msg) const { emit(LogLevel::kDebug, "debug", msg); }

  void emit(LogLevel at, const char* tag, const std::string& msg) const {
    if (static_cast<int>(at) <= static_cast<int>(level)) {
      std::fprintf(stderr, "dperm [%s] %s\n", tag, msg.c_str());
    }
  }
};

// One bag of knobs; each subcommand registers only the options it
// understands, so a stray flag still fails at parse time.
struct Options {
  std::string input;
  std::string schema;
  std::string out;
  std::string fit_path;
  std::string loss = "logistic";
  double h = 1.0;
  double c = 0.001;
  double tol = 1e-8;
  int max_iter = 200;
  std::string mechanism = "obj";
  std::string privacy = "dp";
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
  double alpha = 0.05;
  std::int64_t m = 10000;
  std::int64_t k = 200;
  std::int64_t m_vi = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string method = "auto";
  std::int64_t n1 = 0;  // 0 keeps all rows
  int d1 = 0;           // 0 keeps all raw feature columns
  std::int64_t synth_n = 0;
  int synth_d = 0;
  std::string theta;  // comma-separated ground-truth direction
  std::string model = "logistic-gen";
  std::string config_path;
};

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string trimmed(const std::string& s) {
  const std::size_t begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) {
    return "";
  }
  const std::size_t end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

// Splices config-file entries into the argument list as ordinary flag tokens
// before parsing, so config values pass the same validation as flags. Keys the
// command line already sets are skipped, which is what makes flags win.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) {
    return args;
  }
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  const auto given = [&args](const std::string& flag) {
    for (const std::string& arg : args) {
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
        return true;
      }
    }
    return false;
  };
  std::vector<std::string> full = args;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string entry = trimmed(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';' || entry[0] == '[') {
      continue;
    }
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not key=value: '" + entry + "'");
    }
    const std::string key = trimmed(entry.substr(0, eq));
    std::string value = trimmed(entry.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
    }
    if (key == "config" || given("--" + key)) {
      continue;
    }
    full.push_back("--" + key);
    full.push_back(value);
  }
  return full;
}

Vector parse_theta(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string raw =
        comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    const std::string token = trimmed(raw);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ConfigError("theta entry '" + token + "' is not a number");
    }
    if (used != token.size()) {
      throw ConfigError("theta entry '" + token + "' is not a number");
    }
    values.push_back(value);
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = values[i];
  }
  return v;
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

std::uint64_t resolve_seed(const CLI::App& sub, const Options& o) {
  if (sub.count("--seed") > 0) {
    return o.seed;
  }
  const std::uint64_t chosen = entropy_seed();
  // Printed regardless of log level: without the seed the run cannot be
  // reproduced.
  std::fprintf(stderr, "dperm [seed] no --seed given; using %llu\n",
               static_cast<unsigned long long>(chosen));
  return chosen;
}

LossModel make_loss(const Options& o) {
  return o.loss == "logistic" ? LossModel::logistic() : LossModel::huber_svm(o.h);
}

TrainConfig make_train_config(const Options& o) {
  TrainConfig cfg;
  cfg.c = o.c;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  return cfg;
}

PrivacyBudget stage_budget(const std::string& privacy, double value) {
  return privacy == "dp" ? pure_dp(value) : zcdp(value);
}

Dataset load_dataset(const Options& o, std::uint64_t seed, const Logger& log) {
  if (o.input.empty()) {
    throw ConfigError("--input is required");
  }
  if (o.schema.empty()) {
    if (o.n1 != 0 || o.d1 != 0) {
      throw ConfigError("--n1/--d1 apply during raw-CSV ingestion and need --schema");
    }
    log.debug("reading processed dataset from " + o.input);
    return read_processed_csv_file(o.input);
  }
  log.debug("reading raw CSV from " + o.input);
  const RawTable table = read_csv_file(o.input);
  auto schema = parse_schema_file(o.schema, table.header);
  schema = infer_categories(table, schema);
  PipelineOptions opts;
  if (o.n1 != 0) {
    opts.n1 = o.n1;
  }
  if (o.d1 != 0) {
    opts.d1 = o.d1;
  }
  opts.seed = seed;
  PreprocessResult result = preprocess_table(table, schema, opts);
  log.info("target mapping: '" + result.target.negative + "' -> -1, '" +
           result.target.positive + "' -> +1");
  return std::move(result.data);
}

SynthSpec make_synth_spec(const Options& o, std::uint64_t seed) {
  SynthSpec spec;
  spec.n = o.synth_n;
  spec.d = o.synth_d;
  spec.theta_star = parse_theta(o.theta);
  spec.model = o.model == "margin-gen" ? SynthModel::kMarginGen : SynthModel::kLogisticGen;
  spec.seed = seed;
  return spec;
}

CIMethod resolve_method(const std::string& name, Mechanism mechanism) {
  if (name == "mc-dp") {
    return CIMethod::kMonteCarloDP;
  }
  if (name == "zcdp-closed") {
    return CIMethod::kClosedFormZCDP;
  }
  return mechanism == Mechanism::kOutputPerturbZCDP ? CIMethod::kClosedFormZCDP
                                                    : CIMethod::kMonteCarloDP;
}

// The echoed configuration uses the exact flag spellings, so the map dumped
// into an artifact can be fed back verbatim as a --config file. Empty string
// values (unset paths) are omitted.
void echo(std::map<std::string, std::string>& cfg, const std::string& key,
          const std::string& value) {
  if (!value.empty()) {
    cfg[key] = value;
  }
}

std::map<std::string, std::string> data_echo(const Options& o) {
  std::map<std::string, std::string> cfg;
  echo(cfg, "input", o.input);
  echo(cfg, "schema", o.schema);
  cfg["n1"] = std::to_string(o.n1);
  cfg["d1"] = std::to_string(o.d1);
  return cfg;
}

void loss_echo(std::map<std::string, std::string>& cfg, const Options& o) {
  cfg["loss"] = o.loss;
  cfg["h"] = format_double(o.h);
}

void train_echo(std::map<std::string, std::string>& cfg, const Options& o) {
  cfg["c"] = format_double(o.c);
  cfg["tol"] = format_double(o.tol);
  cfg["max-iter"] = std::to_string(o.max_iter);
}

RunMetadata make_metadata(std::uint64_t seed, int workers,
                          std::map<std::string, std::string> config) {
  RunMetadata meta;
  meta.seed = seed;
  meta.workers = workers;
  config["seed"] = std::to_string(seed);
  meta.config = std::move(config);
  return meta;
}

int cmd_train(const Options& o, std::uint64_t seed, const Logger& log) {
  const Dataset data = load_dataset(o, seed, log);
  const LossModel model = make_loss(o);
  const TrainConfig train_cfg = make_train_config(o);
  const PrivacyBudget phi1 = stage_budget(o.privacy, o.phi1);
  Sampler sampler(RngStream{seed, 0});
  PrivateFit fit;
  if (o.mechanism == "obj") {
    // The objective trainer takes a pure-DP epsilon; a concentrated budget
    // reaches it through the eps = sqrt(2 rho) comparison rule.
    const PrivacyBudget eps =
        phi1.kind == BudgetKind::kPureDP ? phi1 : pure_dp_equivalent(phi1);
    fit = train_objective_perturbation(data, model, train_cfg, eps, sampler);
  } else {
    fit = train_output_perturbation(data, model, train_cfg, phi1, sampler);
  }

  auto cfg = data_echo(o);
  loss_echo(cfg, o);
  train_echo(cfg, o);
  cfg["mechanism"] = o.mechanism;
  cfg["privacy"] = o.privacy;
  cfg["phi1"] = format_double(o.phi1);
  echo(cfg, "out", o.out);
  echo(cfg, "config", o.config_path);
  write_text_file(o.out, fit_to_json(fit, make_metadata(seed, 1, std::move(cfg))));
  log.info("wrote " + mechanism_name(fit.mechanism) + " fit to " + o.out);
  return kExitOk;
}

int cmd_ci(const Options& o, std::uint64_t seed, const Logger& log) {
  const Dataset data = load_dataset(o, seed, log);
  const PrivateFit fit = fit_from_json(read_text_file(o.fit_path));
  const LossModel model = make_loss(o);
  const PrivacyBudget phi2 = stage_budget(o.privacy, o.phi2);
  const PrivacyBudget phi3 = stage_budget(o.privacy, o.phi3);
  Sampler sampler(RngStream{seed, 0});
  const AsymptoticPieces pieces = estimate_pieces(data, model, fit, phi2, phi3, sampler);
  CISpec spec;
  spec.alpha = o.alpha;
  spec.m = o.m;
  spec.method = resolve_method(o.method, fit.mechanism);
  log.debug("interval method: " + method_name(spec.method));
  const IntervalSet intervals = fit.mechanism == Mechanism::kObjectivePerturb
                                    ? ci_objective(fit, pieces, spec, sampler)
                                    : ci_output(fit, pieces, spec, sampler);

  auto cfg = data_echo(o);
  loss_echo(cfg, o);
  echo(cfg, "fit", o.fit_path);
  cfg["privacy"] = o.privacy;
  cfg["phi2"] = format_double(o.phi2);
  cfg["phi3"] = format_double(o.phi3);
  cfg["alpha"] = format_double(o.alpha);
  cfg["m"] = std::to_string(o.m);
  cfg["method"] = o.method;
  echo(cfg, "out", o.out);
  echo(cfg, "config", o.config_path);
  write_text_file(o.out, intervals_to_json(intervals, make_metadata(seed, 1, std::move(cfg))));
  log.info("wrote " + method_name(intervals.method) + " intervals to " + o.out);
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::uint64_t seed, const Logger& log) {
  Dataset data = [&] {
    if (!o.input.empty()) {
      return load_dataset(o, seed, log);
    }
    if (o.theta.empty()) {
      throw ConfigError(
          "evaluate needs --input or a synthetic spec (--synth-n, --synth-d, --synth-theta)");
    }
    log.info("generating synthetic dataset: n=" + std::to_string(o.synth_n) +
             ", d=" + std::to_string(o.synth_d) + ", model=" + o.model);
    return generate(make_synth_spec(o, seed));
  }();

  EvalConfig cfg;
  cfg.k = o.k;
  cfg.m_vi = o.m_vi;
  cfg.m = o.m;
  cfg.alpha = o.alpha;
  cfg.seed = seed;
  cfg.budgets = BudgetSplit{stage_budget(o.privacy, o.phi1), stage_budget(o.privacy, o.phi2),
                            stage_budget(o.privacy, o.phi3)};
  cfg.mechanism = o.mechanism == "obj" ? TrainMechanism::kObjective : TrainMechanism::kOutput;
  cfg.loss = make_loss(o);
  cfg.train = make_train_config(o);
  cfg.workers = o.workers;
  log.info("evaluating: k=" + std::to_string(o.k) + ", m_vi=" + std::to_string(o.m_vi) +
           ", m=" + std::to_string(o.m) + ", workers=" + std::to_string(o.workers));
  const EvalReport report = run_evaluation(data, cfg);

  auto config = data_echo(o);
  loss_echo(config, o);
  train_echo(config, o);
  config["mechanism"] = o.mechanism;
  config["privacy"] = o.privacy;
  config["phi1"] = format_double(o.phi1);
  config["phi2"] = format_double(o.phi2);
  config["phi3"] = format_double(o.phi3);
  config["alpha"] = format_double(o.alpha);
  config["m"] = std::to_string(o.m);
  config["k"] = std::to_string(o.k);
  config["mvi"] = std::to_string(o.m_vi);
  config["workers"] = std::to_string(o.workers);
  config["synth-n"] = std::to_string(o.synth_n);
  config["synth-d"] = std::to_string(o.synth_d);
  echo(config, "synth-theta", o.theta);
  config["synth-model"] = o.model;
  echo(config, "out", o.out);
  echo(config, "config", o.config_path);
  write_text_file(o.out,
                  report_to_json(report, make_metadata(seed, o.workers, std::move(config))));
  std::fputs(report_table(report).c_str(), stdout);
  log.info("wrote evaluation report to " + o.out);
  return kExitOk;
}

int cmd_synth(const Options& o, std::uint64_t seed, const Logger& log) {
  const SynthSpec spec = make_synth_spec(o, seed);
  const Dataset data = generate(spec);
  write_processed_csv_file(data, o.out);

  std::map<std::string, std::string> cfg;
  cfg["n"] = std::to_string(o.synth_n);
  cfg["d"] = std::to_string(o.synth_d);
  cfg["theta"] = o.theta;
  cfg["model"] = o.model;
  echo(cfg, "out", o.out);
  echo(cfg, "config", o.config_path);
  write_text_file(o.out + ".meta.json",
                  metadata_to_json(make_metadata(seed, 1, std::move(cfg))));
  log.info("wrote " + std::to_string(data.n()) + " records (dim " +
           std::to_string(data.dim()) + ") to " + o.out);
  return kExitOk;
}

void add_data_flags(CLI::App* sub, Options& o, bool input_required) {
  auto* input = sub->add_option("--input", o.input,
                                "Dataset CSV: processed format, or raw with --schema");
  if (input_required) {
    input->required();
  }
  sub->add_option("--schema", o.schema,
                  "Schema config for raw CSV (target = ..., categorical = ...)");
  sub->add_option("--n1", o.n1, "Keep this many records during ingestion (0 = all)");
  sub->add_option("--d1", o.d1, "Keep this many raw feature columns during ingestion (0 = all)");
}

void add_loss_flags(CLI::App* sub, Options& o) {
  sub->add_option("--loss", o.loss, "Loss model")
      ->check(CLI::IsMember({"logistic", "huber"}));
  // --h needs the short help flag gone; every app uses --help only.
  sub->add_option("--h", o.h, "Huberized hinge half-width (huber loss only)");
}

void use_long_help(CLI::App* sub) {
  sub->set_help_flag("--help", "Print this help message and exit");
}

void add_train_flags(CLI::App* sub, Options& o) {
  sub->add_option("--c", o.c, "L2 regularization weight per record");
  sub->add_option("--tol", o.tol, "Gradient-norm stopping tolerance");
  sub->add_option("--max-iter", o.max_iter, "Solver iteration budget");
}

void add_mechanism_flags(CLI::App* sub, Options& o) {
  sub->add_option("--mechanism", o.mechanism, "Training mechanism")
      ->check(CLI::IsMember({"obj", "output"}));
  sub->add_option("--privacy", o.privacy, "Budget kind: dp (epsilon) or zcdp (rho)")
      ->check(CLI::IsMember({"dp", "zcdp"}));
}

void add_common_tail(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Seed for all randomness (omitted: drawn and printed)");
  sub->add_option("--out", o.out, "Output artifact path")->required();
  sub->add_option("--config", o.config_path, "key=value config file; command-line flags win");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
  Logger log;
  try {
    log.level = parse_log_level();
  } catch (const ConfigError& e) {
    log.error(e.what());
    return kExitConfig;
  }

  std::vector<std::string> full;
  try {
    full = apply_config_file(args);
  } catch (const InvalidArgument& e) {
    log.error(e.what());
    return kExitConfig;
  }
  full.insert(full.begin(), "dperm");
  std::vector<const char*> argv_vec;
  argv_vec.reserve(full.size());
  for (const std::string& arg : full) {
    argv_vec.push_back(arg.c_str());
  }

  CLI::App app{"Differentially private regularized ERM with confidence intervals"};
  app.require_subcommand(1);
  use_long_help(&app);

  Options train_o;
  Options ci_o;
  Options eval_o;
  Options synth_o;
  eval_o.m = 2000;  // harness default; the ci subcommand keeps 10000

  CLI::App* train = app.add_subcommand("train", "Train a private model, write the fit JSON");
  use_long_help(train);
  add_data_flags(train, train_o, true);
  add_loss_flags(train, train_o);
  add_train_flags(train, train_o);
  add_mechanism_flags(train, train_o);
  train->add_option("--phi1", train_o.phi1, "Training privacy budget")->required();
  add_common_tail(train, train_o);

  CLI::App* ci = app.add_subcommand(
      "ci", "Per-coordinate confidence intervals for an existing fit, written as JSON");
  use_long_help(ci);
  add_data_flags(ci, ci_o, true);
  add_loss_flags(ci, ci_o);
  ci->add_option("--fit", ci_o.fit_path, "Fit JSON produced by train")->required();
  ci->add_option("--privacy", ci_o.privacy, "Budget kind: dp (epsilon) or zcdp (rho)")
      ->check(CLI::IsMember({"dp", "zcdp"}));
  ci->add_option("--phi2", ci_o.phi2, "Curvature-release privacy budget")->required();
  ci->add_option("--phi3", ci_o.phi3, "Covariance-release privacy budget")->required();
  ci->add_option("--alpha", ci_o.alpha, "Miscoverage level");
  ci->add_option("--m", ci_o.m, "Monte-Carlo sample count");
  ci->add_option("--method", ci_o.method, "Interval method")
      ->check(CLI::IsMember({"auto", "mc-dp", "zcdp-closed"}));
  add_common_tail(ci, ci_o);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Bootstrap coverage and variability study, written as JSON plus a table");
  use_long_help(evaluate);
  add_data_flags(evaluate, eval_o, false);
  add_loss_flags(evaluate, eval_o);
  add_train_flags(evaluate, eval_o);
  add_mechanism_flags(evaluate, eval_o);
  evaluate->add_option("--phi1", eval_o.phi1, "Training privacy budget")->required();
  evaluate->add_option("--phi2", eval_o.phi2, "Curvature-release privacy budget")->required();
  evaluate->add_option("--phi3", eval_o.phi3, "Covariance-release privacy budget")->required();
  evaluate->add_option("--alpha", eval_o.alpha, "Miscoverage level");
  evaluate->add_option("--m", eval_o.m, "Monte-Carlo samples per interval");
  evaluate->add_option("--k", eval_o.k, "Coverage bootstrap replicates");
  evaluate->add_option("--mvi", eval_o.m_vi, "Variability replicates");
  evaluate->add_option("--workers", eval_o.workers, "Replicate parallelism");
  evaluate->add_option("--synth-n", eval_o.synth_n, "Synthetic record count (no --input)");
  evaluate->add_option("--synth-d", eval_o.synth_d, "Synthetic raw dimension (no --input)");
  evaluate->add_option("--synth-theta", eval_o.theta,
                       "Synthetic ground-truth direction, comma-separated (no --input)");
  evaluate->add_option("--synth-model", eval_o.model, "Synthetic labeling model")
      ->check(CLI::IsMember({"logistic-gen", "margin-gen"}));
  add_common_tail(evaluate, eval_o);

  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic dataset in the processed CSV format");
  use_long_help(synth);
  synth->add_option("--n", synth_o.synth_n, "Record count")->required();
  synth->add_option("--d", synth_o.synth_d, "Raw feature dimension")->required();
  synth->add_option("--theta", synth_o.theta,
                    "Ground-truth direction, comma-separated")
      ->required();
  synth->add_option("--model", synth_o.model, "Labeling model")
      ->check(CLI::IsMember({"logistic-gen", "margin-gen"}));
  add_common_tail(synth, synth_o);

  try {
    app.parse(static_cast<int>(argv_vec.size()), argv_vec.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends: print and succeed
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic
    return kExitConfig;
  }

  try {
    if (train->parsed()) {
      return cmd_train(train_o, resolve_seed(*train, train_o), log);
    }
    if (ci->parsed()) {
      return cmd_ci(ci_o, resolve_seed(*ci, ci_o), log);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(eval_o, resolve_seed(*evaluate, eval_o), log);
    }
    return cmd_synth(synth_o, resolve_seed(*synth, synth_o), log);
  } catch (const BudgetTooSmall& e) {
    log.error(e.what());
    return kExitBudgetTooSmall;
  } catch (const NoConvergence& e) {
    log.error(e.what());
    return kExitNoConvergence;
  } catch (const InvalidArgument& e) {
    log.error(e.what());
    return kExitConfig;
  } catch (const DataError& e) {
    log.error(e.what());
    return kExitData;
  } catch (const std::exception& e) {
    log.error(e.what());
    return kExitFailure;
  }
}

}  // namespace dperm
