#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rvfl/dataset.hpp"
#include "rvfl/enhancement.hpp"
#include "rvfl/kernel_machine.hpp"
#include "rvfl/prediction.hpp"
#include "rvfl/solvers.hpp"
#include "rvfl/synthetic.hpp"

namespace rvfl {

enum class LearnerKind { RvflPinv, RvflRidge, RvflPlus, KrvflPlus };

std::string_view to_string(LearnerKind kind);
LearnerKind parse_learner(std::string_view text);
inline bool uses_privileged(LearnerKind kind) {
  return kind == LearnerKind::RvflPlus || kind == LearnerKind::KrvflPlus;
}

/// Binary tasks train either one ±1 output with the sign rule or two one-hot
/// outputs with argmax.
enum class BinaryRule { Sign, OneVsAll };

struct LearnerConfig {
  LearnerKind kind = LearnerKind::RvflPlus;
  double c = 1.0;
  double gamma = 1000.0;
  double u = 1.0;
  Index nodes = 1000;
  std::optional<Index> priv_nodes;  // defaults to `nodes`
  Activation activation = Activation::Sigmoid;
  KernelSpec kernel;
  std::optional<KernelSpec> priv_kernel;  // defaults to `kernel`
  BinaryRule binary_rule = BinaryRule::Sign;
  std::uint64_t seed = 1;

  Index privileged_nodes() const { return priv_nodes.value_or(nodes); }
  const KernelSpec& privileged_kernel() const { return priv_kernel ? *priv_kernel : kernel; }

  /// Every field, including defaults, as ordered key/value pairs.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;
  std::string describe() const;
};

/// Defaults per learner; KRVFL+ starts at γ = 5000.
LearnerConfig default_config(LearnerKind kind);

/// Stable 64-bit FNV-1a of the echoed configuration, as 16 hex digits.
std::string config_hash(const LearnerConfig& config);

/// splitmix64 step; gives each trial its own stream from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

using ModelVariant = std::variant<RvflModel, RvflPlusModel, KrvflPlusModel>;

/// A trained learner plus what is needed to turn raw outputs into decisions.
/// Prediction takes normal features only; privileged features have no path
/// into it.
struct TrainedModel {
  ModelVariant model;
  TaskKind task = TaskKind::Regression;
  BinaryRule binary_rule = BinaryRule::Sign;
  std::vector<std::string> class_labels;
  std::optional<Vector> input_l1;  // column sums applied to inputs before prediction

  LearnerKind kind() const;
  Index inputs() const;
  Matrix predict_raw(const Matrix& x) const;
  Prediction predict(const Matrix& x) const;
};

struct FitResult {
  TrainedModel model;
  TrainDiagnostics diagnostics;
};

/// Training targets as the learner sees them (±1 column for the binary sign
/// rule, otherwise y unchanged).
Matrix training_targets(const Dataset& data, BinaryRule rule);

FitResult fit(const LearnerConfig& config, const Dataset& train);
Metrics evaluate(const TrainedModel& model, const Dataset& test);

enum class L1Mode { None, FitOnTrain, Joint };
std::string_view to_string(L1Mode mode);
L1Mode parse_l1_mode(std::string_view text);

struct TrialResult {
  int index = 0;
  int fold = -1;
  std::uint64_t seed = 0;
  double metric = 0.0;
  double wall_time_s = 0.0;
  Index train_rows = 0;
  Index test_rows = 0;
};

/// Per-trial metrics and their summary. Trials are only ever appended; the
/// summary is recomputed from the listed trials on every append.
class RunReport {
 public:
  RunReport() = default;
  RunReport(std::string learner, std::string dataset, std::string metric_name, LearnerConfig config);

  void append(const TrialResult& trial);

  const std::string& learner() const { return learner_; }
  const std::string& dataset() const { return dataset_; }
  const std::string& metric_name() const { return metric_name_; }
  const LearnerConfig& config() const { return config_; }
  const std::vector<TrialResult>& trials() const { return trials_; }
  std::vector<std::uint64_t> seeds() const;
  double mean() const { return mean_; }
  double std() const { return std_; }
  double wall_time_s() const { return wall_time_s_; }

  std::optional<double> noise_dbw;

 private:
  std::string learner_;
  std::string dataset_;
  std::string metric_name_;
  LearnerConfig config_;
  std::vector<TrialResult> trials_;
  double mean_ = 0.0;
  double std_ = 0.0;
  double wall_time_s_ = 0.0;
};

std::string metric_name(TaskKind task);
bool higher_is_better(TaskKind task);

/// One model per fold, trained on the other folds with privileged features
/// and scored on the held-out fold with normal features only. Each fold
/// trains with derive_seed(config.seed, fold).
RunReport run_cv(const Dataset& data, const LearnerConfig& config, const FoldPlan& folds,
                 L1Mode l1 = L1Mode::FitOnTrain, const std::string& dataset_name = "dataset");

/// Single train/test evaluation with the config's own seed.
TrialResult run_holdout(const Dataset& train, const Dataset& test, const LearnerConfig& config,
                        L1Mode l1 = L1Mode::FitOnTrain);

struct Holdout {
  Dataset validation;
};
struct CrossValidation {
  int k = 5;
  std::uint64_t seed = 0;
};
using ValidationSpec = std::variant<Holdout, CrossValidation>;

/// A search dimension: fixed value, log-uniform interval, or finite choices.
class ParamRange {
 public:
  static ParamRange fixed(double value);
  static ParamRange log_uniform(double lo, double hi);
  static ParamRange choices(std::vector<double> values);

  double draw(std::mt19937_64& rng) const;
  /// Finite candidate list (the point, or the choices); throws for intervals.
  std::vector<double> grid() const;
  bool is_interval() const { return interval_; }
  bool empty() const;
  std::string describe() const;

 private:
  bool interval_ = false;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> values_;
};

/// 2^-5, 2^-4.5, …, 2^5.
std::vector<double> default_u_grid();

struct SearchSpace {
  LearnerConfig base;
  ParamRange c = ParamRange::log_uniform(1e-5, 1e5);
  ParamRange gamma = ParamRange::log_uniform(1e-5, 1e5);
  ParamRange u = ParamRange::choices(default_u_grid());
  ParamRange tau = ParamRange::log_uniform(0.01, 1.0);
  std::vector<Activation> activations;  // empty: keep base.activation
  Index budget = 20;

  void validate() const;
};

struct SearchDraw {
  LearnerConfig config;
  double score = 0.0;
};

struct SearchResult {
  LearnerConfig best;
  double best_score = 0.0;
  std::vector<SearchDraw> draws;
  RunReport report;  // validation trials of the winning draw
};

/// Mean validation metric of one configuration.
RunReport validate_config(const Dataset& train, const LearnerConfig& config, const ValidationSpec& validation,
                          L1Mode l1 = L1Mode::FitOnTrain);

/// Draws `budget` configurations and keeps the best validation score
/// (highest accuracy or lowest RMSE). Ties go to the earliest draw.
SearchResult random_search(const Dataset& train, const SearchSpace& space, const ValidationSpec& validation,
                           std::uint64_t seed, L1Mode l1 = L1Mode::FitOnTrain);

/// Exhaustive evaluation of the Cartesian product of the finite dimensions,
/// in a fixed order (activation, C, γ, u, τ). Ties go to the earliest point.
SearchResult grid_search(const Dataset& train, const SearchSpace& space, const ValidationSpec& validation,
                         L1Mode l1 = L1Mode::FitOnTrain);

struct ActivationChoice {
  Activation best = Activation::Sigmoid;
  std::vector<std::pair<Activation, double>> scores;
};

/// Scores all five activations on the validation spec and keeps the best.
ActivationChoice select_activation(const Dataset& train, const LearnerConfig& base, const ValidationSpec& validation,
                                   L1Mode l1 = L1Mode::FitOnTrain);

/// Noise protocol: for each seed, Gaussian noise of `power_dbw` is added to
/// every row's normal features; the clean features become the privileged
/// set. Each learner is cross-validated on the same noisy copy. Returns one
/// report per learner with k·|seeds| trials.
std::vector<RunReport> run_noise_experiment(const Dataset& data, double power_dbw,
                                            const std::vector<LearnerConfig>& learners,
                                            const std::vector<std::uint64_t>& seeds, int folds,
                                            L1Mode l1 = L1Mode::FitOnTrain,
                                            const std::string& dataset_name = "dataset");

/// Paired RVFL-vs-RVFL+ comparison on the synthetic privileged-information
/// task. Per seed a fresh task, training, validation and test draw are
/// generated; both learners are tuned by grid search on the validation draw
/// and scored on the test draw.
struct LupiBenchmarkConfig {
  synthetic::LupiConfig task;
  Index train_rows = 100;
  Index validation_rows = 1000;
  Index test_rows = 3000;
  Index nodes = 50;
  Index priv_nodes = 0;
  double u = 1.0;
  Activation activation = Activation::Sigmoid;
  std::vector<double> c_grid = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  std::vector<double> gamma_grid = {1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4, 1e5};
  std::vector<std::uint64_t> seeds;
};

struct LupiBenchmarkResult {
  RunReport baseline;    // ridge RVFL
  RunReport privileged;  // RVFL+
};

LupiBenchmarkResult run_lupi_benchmark(const LupiBenchmarkConfig& config);

/// CSV with columns learner,dataset,metric,mean,std,time_s,seed,config_hash
/// (plus noise_dbw when any report carries a noise level).
void write_report_csv(std::ostream& out, const std::vector<RunReport>& reports);

/// Human-readable table: method, Acc. (%) or RMSE as mean ± std, time (s).
void write_report_table(std::ostream& out, const std::vector<RunReport>& reports);

}  // namespace rvfl
