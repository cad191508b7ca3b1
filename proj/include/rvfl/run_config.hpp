#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rvfl/harness.hpp"

namespace rvfl {

/// A hyperparameter setting as written by the user: a single value ("0.5"),
/// a log-uniform interval ("1e-3:1e3") or a list ("1,10,100").
struct HyperSetting {
  std::string text;

  bool is_fixed() const;
  double value() const;  // throws unless fixed
  ParamRange range() const;
};

/// Everything a CLI run needs. Each field has a documented default; the
/// whole record is echoed into reports so a run can be repeated from it.
struct RunConfig {
  std::string subcommand;
  std::filesystem::path dataset;
  std::filesystem::path validation;  // optional holdout file; empty means CV
  std::filesystem::path model;       // model file read by predict
  std::filesystem::path output;
  std::filesystem::path report;

  TaskKind task = TaskKind::Multiclass;
  bool has_header = true;
  std::string label_column;             // empty: last column
  std::optional<Index> normal_features;  // columns after this are privileged; 0 means half
  L1Mode l1 = L1Mode::FitOnTrain;

  LearnerKind learner = LearnerKind::RvflPlus;
  std::string learners = "rvfl-ridge,rvfl-plus,krvfl-plus";  // compared by the noise bench
  HyperSetting c{"1"};
  HyperSetting gamma;  // empty: learner default
  HyperSetting u{"1"};
  HyperSetting tau{"0.025"};
  std::string activation = "sigmoid";  // name, comma list, or "all"
  Index nodes = 1000;
  std::optional<Index> priv_nodes;
  std::string kernel = "gaussian";  // gaussian | polynomial | none
  int degree = 2;
  double coef = 1.0;
  bool linear = true;
  BinaryRule binary_rule = BinaryRule::Sign;

  int folds = 10;
  int trials = 10;
  Index budget = 20;
  std::uint64_t seed = 1;
  double noise_dbw = 10.0;

  /// Sets one field from its key; throws std::invalid_argument for unknown
  /// keys or malformed values.
  void set(const std::string& key, const std::string& value);
  std::vector<std::pair<std::string, std::string>> to_key_values() const;

  /// True when any dimension is a range or list rather than a single value.
  bool needs_search() const;
  /// Learner configuration with every single-valued dimension applied.
  LearnerConfig learner_config() const { return learner_config_for(learner); }
  LearnerConfig learner_config_for(LearnerKind kind) const;
  std::vector<LearnerKind> learner_list() const;
  SearchSpace search_space() const;
  std::vector<Activation> activations() const;
  CsvOptions csv_options() const;
};

/// "key = value" lines; '#' starts a comment, blank lines are skipped.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);
void write_run_config(std::ostream& out, const RunConfig& config);

}  // namespace rvfl
