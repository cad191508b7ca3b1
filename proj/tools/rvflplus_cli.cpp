// Command-line front end: train, predict, cv, search, bench, verify, bound, synth.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rvfl/bound.hpp"
#include "rvfl/dataset.hpp"
#include "rvfl/harness.hpp"
#include "rvfl/model_io.hpp"
#include "rvfl/run_config.hpp"
#include "rvfl/synthetic.hpp"
#include "rvfl/verify.hpp"

namespace fs = std::filesystem;
using namespace rvfl;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct RunOptions {
  std::string config_file;
  Overrides overrides;
};

void add_key(CLI::App* cmd, RunOptions& opts, const std::string& flag, const std::string& key,
             const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&opts, key](const std::string& v) { opts.overrides.emplace_back(key, v); }, help);
}

void add_data_options(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--config", opts.config_file, "key = value run config; flags override it");
  add_key(cmd, opts, "--dataset", "dataset", "CSV file, label in the last column unless --label");
  add_key(cmd, opts, "--task", "task", "binary | multiclass | regression");
  add_key(cmd, opts, "--header", "header", "first CSV row is a header (true/false)");
  add_key(cmd, opts, "--label", "label", "label column name or zero-based index");
  add_key(cmd, opts, "--normal-features", "normal_features",
          "leading feature columns available at test time (count, half, or all); the rest are privileged");
  add_key(cmd, opts, "--l1", "l1", "feature L1 normalization: none | train | joint");
  add_key(cmd, opts, "--seed", "seed", "master seed");
}

void add_learner_options(CLI::App* cmd, RunOptions& opts) {
  add_key(cmd, opts, "--learner", "learner", "rvfl-pinv | rvfl-ridge | rvfl-plus | krvfl-plus");
  add_key(cmd, opts, "--C", "C", "value, lo:hi range, or a,b,c list");
  add_key(cmd, opts, "--gamma", "gamma", "value, lo:hi range, or a,b,c list");
  add_key(cmd, opts, "--u", "u", "weight scale; value, range or list");
  add_key(cmd, opts, "--tau", "tau", "Gaussian kernel width; value, range or list");
  add_key(cmd, opts, "--activation", "activation", "sigmoid | sine | hardlim | tribas | radbas, a list, or all");
  add_key(cmd, opts, "--P", "P", "enhancement nodes");
  add_key(cmd, opts, "--priv-P", "priv_P", "privileged enhancement nodes (default: same as --P)");
  add_key(cmd, opts, "--kernel", "kernel", "Mercer part of the kernel: gaussian | polynomial | none");
  add_key(cmd, opts, "--degree", "degree", "polynomial kernel degree");
  add_key(cmd, opts, "--coef", "coef", "polynomial kernel offset");
  add_key(cmd, opts, "--linear", "linear", "add the linear kernel (true/false)");
  add_key(cmd, opts, "--binary-rule", "binary_rule", "sign | ova");
  add_key(cmd, opts, "--validation", "validation", "holdout CSV used for tuning instead of CV");
  add_key(cmd, opts, "--folds", "folds", "cross-validation folds");
  add_key(cmd, opts, "--budget", "budget", "random search draws");
}

RunConfig resolve(const RunOptions& opts, const std::string& subcommand) {
  RunConfig cfg = opts.config_file.empty() ? RunConfig{} : load_run_config(opts.config_file);
  for (const auto& [k, v] : opts.overrides) cfg.set(k, v);
  cfg.subcommand = subcommand;
  return cfg;
}

Dataset load_dataset(const RunConfig& cfg, const fs::path& path) {
  if (path.empty()) throw UsageError("--dataset is required");
  if (!fs::exists(path)) throw DataError("dataset not found: " + path.string());
  Dataset data = load_csv(path, cfg.csv_options(), cfg.task);
  if (cfg.normal_features) {
    const Index k = *cfg.normal_features == 0 ? default_normal_count(data.x.cols()) : *cfg.normal_features;
    data = split_privileged(data, k);
  }
  return data;
}

std::string dataset_name(const RunConfig& cfg) {
  return cfg.dataset.empty() ? "synthetic-lupi" : cfg.dataset.stem().string();
}

// Writes via a temporary sibling so a failure never leaves a partial file.
void write_file(const fs::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out.flush()) {
      out.close();
      fs::remove(tmp);
      throw DataError("failed writing " + path.string());
    }
  }
  fs::rename(tmp, path);
}

std::string echo(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& [k, v] : cfg.to_key_values()) out << "# " << k << " = " << v << '\n';
  return out.str();
}

ValidationSpec validation_spec(const RunConfig& cfg) {
  if (!cfg.validation.empty()) return Holdout{load_dataset(cfg, cfg.validation)};
  return CrossValidation{cfg.folds, cfg.seed};
}

void warn_conditioning(const TrainDiagnostics& diag) {
  if (diag.ill_conditioned()) {
    std::cerr << "warning: solve is ill-conditioned (condition estimate " << diag.condition_estimate << ")\n";
  }
}

int cmd_train(const RunOptions& opts) {
  const RunConfig cfg = resolve(opts, "train");
  if (cfg.output.empty()) throw UsageError("--output is required");
  const Dataset raw = load_dataset(cfg, cfg.dataset);

  LearnerConfig lc = cfg.learner_config();
  std::ostringstream report;
  if (cfg.needs_search()) {
    const auto result = random_search(raw, cfg.search_space(), validation_spec(cfg), cfg.seed, cfg.l1);
    lc = result.best;
    report << "search: " << result.draws.size() << " draws, best validation " << metric_name(raw.task) << ' '
           << result.best_score << '\n';
  }

  Dataset train = raw;
  std::optional<Vector> input_l1;
  if (cfg.l1 != L1Mode::None) {
    const L1Scaling scaling = fit_l1(raw);
    train = apply_l1(raw, scaling);
    input_l1 = scaling.normal;
  }
  FitResult fitted = fit(lc, train);
  fitted.model.input_l1 = input_l1;
  warn_conditioning(fitted.diagnostics);

  const Metrics m = metrics(fitted.model.predict(raw.x), raw);
  report << echo(cfg);
  for (const auto& [k, v] : lc.to_key_values()) report << k << " = " << v << '\n';
  report << "train_" << metric_name(raw.task) << " = " << m.value() << '\n';
  report << "train_mse = " << fitted.diagnostics.train_loss << '\n';
  if (uses_privileged(lc.kind)) report << "kkt_residual = " << fitted.diagnostics.kkt_residual << '\n';
  report << "condition_estimate = " << fitted.diagnostics.condition_estimate << '\n';

  std::ostringstream model_text;
  save_model(model_text, fitted.model, &lc);
  write_file(cfg.output, model_text.str());
  if (!cfg.report.empty()) write_file(cfg.report, report.str());
  std::cout << report.str();
  return 0;
}

int cmd_predict(const RunOptions& opts) {
  RunConfig cfg = resolve(opts, "predict");
  if (cfg.model.empty()) throw UsageError("--model is required");
  if (!fs::exists(cfg.model)) throw DataError("model not found: " + cfg.model.string());
  const TrainedModel model = load_model_file(cfg.model);
  cfg.task = model.task;
  const Dataset data = load_dataset(cfg, cfg.dataset);
  if (data.x.cols() != model.inputs()) {
    throw DataError("dataset has " + std::to_string(data.x.cols()) + " normal features, model expects " +
                    std::to_string(model.inputs()));
  }
  const Prediction pred = model.predict(data.x);

  std::ostringstream out;
  out << std::setprecision(17) << "prediction\n";
  for (Index i = 0; i < data.rows(); ++i) {
    if (model.task == TaskKind::Regression) {
      for (Index j = 0; j < pred.raw.cols(); ++j) out << (j ? "," : "") << pred.raw(i, j);
    } else {
      const double d = pred.decided[static_cast<std::size_t>(i)];
      const auto c = static_cast<std::size_t>(model.task == TaskKind::Binary ? (d > 0 ? 1 : 0) : d);
      out << (c < model.class_labels.size() ? model.class_labels[c] : std::to_string(c));
    }
    out << '\n';
  }
  const Metrics m = metrics(pred, data);
  if (cfg.output.empty()) {
    std::cout << out.str();
  } else {
    write_file(cfg.output, out.str());
  }
  std::cerr << metric_name(model.task) << " = " << m.value() << '\n';
  return 0;
}

void emit_reports(const RunConfig& cfg, const std::vector<RunReport>& reports) {
  write_report_table(std::cout, reports);
  if (!cfg.report.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, reports);
    write_file(cfg.report, csv.str());
  }
}

int cmd_cv(const RunOptions& opts) {
  const RunConfig cfg = resolve(opts, "cv");
  const Dataset data = load_dataset(cfg, cfg.dataset);
  if (cfg.needs_search()) throw UsageError("cv takes single hyperparameter values; use search for ranges");
  const LearnerConfig lc = cfg.learner_config();

  RunReport total(std::string(to_string(lc.kind)), dataset_name(cfg), metric_name(data.task), lc);
  for (int t = 0; t < cfg.trials; ++t) {
    LearnerConfig trial_cfg = lc;
    trial_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    const FoldPlan plan = make_folds(data.rows(), cfg.folds, trial_cfg.seed);
    const RunReport run = run_cv(data, trial_cfg, plan, cfg.l1, dataset_name(cfg));
    for (TrialResult r : run.trials()) {
      r.index = t * cfg.folds + r.fold;
      total.append(r);
    }
  }
  emit_reports(cfg, {total});
  return 0;
}

int cmd_search(const RunOptions& opts) {
  const RunConfig cfg = resolve(opts, "search");
  const Dataset data = load_dataset(cfg, cfg.dataset);
  const auto result = random_search(data, cfg.search_space(), validation_spec(cfg), cfg.seed, cfg.l1);

  std::ostringstream csv;
  csv << std::setprecision(17) << "draw,C,gamma,u,activation,score\n";
  for (std::size_t i = 0; i < result.draws.size(); ++i) {
    const auto& d = result.draws[i];
    csv << i << ',' << d.config.c << ',' << d.config.gamma << ',' << d.config.u << ','
        << to_string(d.config.activation) << ',' << d.score << '\n';
  }
  std::cout << "best " << metric_name(data.task) << " = " << result.best_score << '\n';
  for (const auto& [k, v] : result.best.to_key_values()) std::cout << k << " = " << v << '\n';
  if (!cfg.report.empty()) write_file(cfg.report, csv.str());
  return 0;
}

int cmd_bench(const RunOptions& opts, const std::string& suite) {
  const RunConfig cfg = resolve(opts, "bench");
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < cfg.trials; ++t) seeds.push_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));

  if (suite == "lupi") {
    LupiBenchmarkConfig bench;
    bench.seeds = seeds;
    const auto result = run_lupi_benchmark(bench);
    emit_reports(cfg, {result.baseline, result.privileged});
    return 0;
  }
  if (suite == "noise") {
    const Dataset data = load_dataset(cfg, cfg.dataset);
    std::vector<LearnerConfig> learners;
    for (const auto kind : cfg.learner_list()) learners.push_back(cfg.learner_config_for(kind));
    const auto reports = run_noise_experiment(data, cfg.noise_dbw, learners, seeds, cfg.folds, cfg.l1,
                                              dataset_name(cfg));
    emit_reports(cfg, reports);
    return 0;
  }
  throw UsageError("unknown bench suite '" + suite + "' (expected lupi or noise)");
}

int cmd_verify(int instances, std::uint64_t seed, bool flip) {
  if (instances < 1) throw UsageError("--instances must be >= 1");
  const auto report = verify_closed_form(instances, seed, flip ? RhsSign::FlippedSign : RhsSign::Consistent);
  std::size_t failing = 0;
  for (const auto& c : report.cases) failing += c.worst() > report.tolerance ? 1 : 0;
  std::cout << "instances: " << report.cases.size() << '\n'
            << "max residual: " << std::scientific << std::setprecision(3) << report.max_residual << '\n'
            << "tolerance: " << report.tolerance << std::defaultfloat << '\n'
            << "failing: " << failing << '\n'
            << (report.passed() ? "PASS" : "FAIL") << '\n';
  return report.passed() ? 0 : kExitNumerical;
}

int cmd_bound(const bound::BoundInputs& in) {
  const auto terms = bound::bound_terms(in);
  std::cout << std::setprecision(10) << "empirical: " << terms.empirical << '\n'
            << "complexity: " << terms.complexity << '\n'
            << "confidence: " << terms.confidence << '\n'
            << "bound: " << terms.total() << '\n';
  std::cerr << "note: the confidence term assumes the loss is bounded by K*Z*B\n";
  return 0;
}

int cmd_synth(const fs::path& output, Index rows, std::uint64_t seed) {
  if (output.empty()) throw UsageError("--output is required");
  if (rows < 1) throw UsageError("--rows must be >= 1");
  const synthetic::LupiTask task(synthetic::LupiConfig{}, derive_seed(seed, 0));
  std::ostringstream csv;
  write_csv(csv, task.sample(rows, derive_seed(seed, 1)));
  write_file(output, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RVFL, RVFL+ and KRVFL+ with privileged information"};
  app.require_subcommand(1);

  RunOptions train_opts;
  auto* train = app.add_subcommand("train", "train a learner and write a model file");
  add_data_options(train, train_opts);
  add_learner_options(train, train_opts);
  add_key(train, train_opts, "--output", "output", "model file to write");
  add_key(train, train_opts, "--report", "report", "training report file");

  RunOptions predict_opts;
  auto* predict = app.add_subcommand("predict", "apply a model file to a dataset");
  add_data_options(predict, predict_opts);
  add_key(predict, predict_opts, "--model", "model", "model file from train");
  add_key(predict, predict_opts, "--output", "output", "prediction CSV (default: stdout)");

  RunOptions cv_opts;
  auto* cv = app.add_subcommand("cv", "repeated k-fold cross-validation");
  add_data_options(cv, cv_opts);
  add_learner_options(cv, cv_opts);
  add_key(cv, cv_opts, "--trials", "trials", "repetitions with fresh folds and layers");
  add_key(cv, cv_opts, "--report", "report", "CSV report");

  RunOptions search_opts;
  auto* search = app.add_subcommand("search", "random hyperparameter search");
  add_data_options(search, search_opts);
  add_learner_options(search, search_opts);
  add_key(search, search_opts, "--report", "report", "CSV of every draw");

  RunOptions bench_opts;
  std::string suite = "lupi";
  auto* bench = app.add_subcommand("bench", "benchmark suites: lupi (synthetic) or noise (dataset + white noise)");
  bench->add_option("--suite", suite, "lupi | noise")->capture_default_str();
  add_data_options(bench, bench_opts);
  add_learner_options(bench, bench_opts);
  add_key(bench, bench_opts, "--learners", "learners", "comma list of learners for the noise suite");
  add_key(bench, bench_opts, "--noise-dbw", "noise_dbw", "noise power in dBW");
  add_key(bench, bench_opts, "--trials", "trials", "number of seeds");
  add_key(bench, bench_opts, "--report", "report", "CSV report");

  int instances = 100;
  std::uint64_t verify_seed = 1;
  bool flip = false;
  auto* verify = app.add_subcommand("verify", "compare the RVFL+ closed form with the KKT oracle");
  verify->add_option("--instances", instances, "random instances")->capture_default_str();
  verify->add_option("--seed", verify_seed, "seed")->capture_default_str();
  verify->add_flag("--flip-sign", flip, "use the subtracted right-hand side (expected to fail)");

  bound::BoundInputs bound_in;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate the Rademacher generalization bound");
  bound_cmd->add_option("--loss", bound_in.empirical_loss, "empirical loss")->capture_default_str();
  bound_cmd->add_option("--K", bound_in.lipschitz, "Lipschitz constant of the loss")->capture_default_str();
  bound_cmd->add_option("--Z", bound_in.feature_norm, "bound on the enhanced feature norm")->capture_default_str();
  bound_cmd->add_option("--B", bound_in.weight_norm, "bound on the weight norm")->capture_default_str();
  bound_cmd->add_option("--M", bound_in.samples, "training samples")->capture_default_str();
  bound_cmd->add_option("--delta", bound_in.delta, "failure probability")->capture_default_str();

  std::string synth_out;
  Index synth_rows = 300;
  std::uint64_t synth_seed = 1;
  auto* synth = app.add_subcommand("synth", "write the synthetic privileged-information dataset");
  synth->add_option("--output", synth_out, "CSV path")->required();
  synth->add_option("--rows", synth_rows, "rows")->capture_default_str();
  synth->add_option("--seed", synth_seed, "seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*train) return cmd_train(train_opts);
    if (*predict) return cmd_predict(predict_opts);
    if (*cv) return cmd_cv(cv_opts);
    if (*search) return cmd_search(search_opts);
    if (*bench) return cmd_bench(bench_opts, suite);
    if (*verify) return cmd_verify(instances, verify_seed, flip);
    if (*bound_cmd) return cmd_bound(bound_in);
    if (*synth) return cmd_synth(synth_out, synth_rows, synth_seed);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
