#include "rvfl/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace rvfl {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs body(i) for i in [0, count) under OpenMP and rethrows the first
// exception on the calling thread.
template <typename Body>
void parallel_for(int count, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool better(double candidate, double incumbent, bool higher) {
  return higher ? candidate > incumbent : candidate < incumbent;
}

bool uses_c(LearnerKind k) { return k != LearnerKind::RvflPinv; }
bool uses_random_layer(LearnerKind k) { return k != LearnerKind::KrvflPlus; }
bool uses_tau(const LearnerConfig& cfg) {
  return cfg.kind == LearnerKind::KrvflPlus && std::holds_alternative<GaussianKernel>(cfg.kernel.mercer);
}

void set_tau(LearnerConfig& cfg, double tau) {
  if (auto* g = std::get_if<GaussianKernel>(&cfg.kernel.mercer)) g->tau = tau;
  if (cfg.priv_kernel) {
    if (auto* g = std::get_if<GaussianKernel>(&cfg.priv_kernel->mercer)) g->tau = tau;
  }
}

}  // namespace

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::RvflPinv: return "rvfl-pinv";
    case LearnerKind::RvflRidge: return "rvfl-ridge";
    case LearnerKind::RvflPlus: return "rvfl-plus";
    case LearnerKind::KrvflPlus: return "krvfl-plus";
  }
  return "unknown";
}

LearnerKind parse_learner(std::string_view text) {
  for (const auto k : {LearnerKind::RvflPinv, LearnerKind::RvflRidge, LearnerKind::RvflPlus, LearnerKind::KrvflPlus}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown learner '" + std::string(text) + "'");
}

std::string_view to_string(L1Mode mode) {
  switch (mode) {
    case L1Mode::None: return "none";
    case L1Mode::FitOnTrain: return "train";
    case L1Mode::Joint: return "joint";
  }
  return "unknown";
}

L1Mode parse_l1_mode(std::string_view text) {
  if (text == "none") return L1Mode::None;
  if (text == "train") return L1Mode::FitOnTrain;
  if (text == "joint") return L1Mode::Joint;
  throw std::invalid_argument("unknown normalization mode '" + std::string(text) + "'");
}

std::vector<std::pair<std::string, std::string>> LearnerConfig::to_key_values() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("learner", std::string(to_string(kind)));
  kv.emplace_back("C", format_double(c));
  kv.emplace_back("gamma", format_double(gamma));
  kv.emplace_back("u", format_double(u));
  kv.emplace_back("nodes", std::to_string(nodes));
  kv.emplace_back("priv_nodes", std::to_string(privileged_nodes()));
  kv.emplace_back("activation", std::string(to_string(activation)));
  kv.emplace_back("kernel", kernel.describe());
  kv.emplace_back("priv_kernel", privileged_kernel().describe());
  kv.emplace_back("binary_rule", binary_rule == BinaryRule::Sign ? "sign" : "ova");
  kv.emplace_back("seed", std::to_string(seed));
  return kv;
}

std::string LearnerConfig::describe() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : to_key_values()) {
    out << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return out.str();
}

LearnerConfig default_config(LearnerKind kind) {
  LearnerConfig cfg;
  cfg.kind = kind;
  if (kind == LearnerKind::KrvflPlus) cfg.gamma = kDefaultKernelGamma;
  return cfg;
}

std::string config_hash(const LearnerConfig& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char ch : config.describe()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

LearnerKind TrainedModel::kind() const {
  switch (model.index()) {
    case 0: return std::get<RvflModel>(model).variant == RvflModel::Variant::Pinv ? LearnerKind::RvflPinv
                                                                                 : LearnerKind::RvflRidge;
    case 1: return LearnerKind::RvflPlus;
    default: return LearnerKind::KrvflPlus;
  }
}

Index TrainedModel::inputs() const {
  return std::visit(
      [](const auto& m) -> Index {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, KrvflPlusModel>) {
          return m.x_train.cols();
        } else {
          return m.layer.inputs();
        }
      },
      model);
}

Matrix TrainedModel::predict_raw(const Matrix& x) const {
  if (input_l1) {
    const Matrix scaled = apply_l1(x, *input_l1);
    return std::visit([&scaled](const auto& m) { return m.predict(scaled); }, model);
  }
  return std::visit([&x](const auto& m) { return m.predict(x); }, model);
}

Prediction TrainedModel::predict(const Matrix& x) const { return make_prediction(predict_raw(x), task); }

Matrix training_targets(const Dataset& data, BinaryRule rule) {
  if (data.task == TaskKind::Binary && rule == BinaryRule::Sign) return signed_targets(data);
  return data.y;
}

FitResult fit(const LearnerConfig& config, const Dataset& train) {
  train.validate();
  const Matrix targets = training_targets(train, config.binary_rule);
  if (uses_privileged(config.kind) && !train.x_priv) {
    throw DataError(std::string(to_string(config.kind)) + " needs privileged features for training");
  }

  FitResult result;
  result.model.task = train.task;
  result.model.binary_rule = config.binary_rule;
  result.model.class_labels = train.class_labels;

  switch (config.kind) {
    case LearnerKind::RvflPinv:
    case LearnerKind::RvflRidge: {
      const auto layer =
          EnhancementLayer::init(train.x.cols(), config.nodes, config.activation, config.u, config.seed);
      const Matrix h = layer.apply(train.x);
      RvflModel model{config.kind == LearnerKind::RvflPinv ? RvflModel::Variant::Pinv : RvflModel::Variant::Ridge,
                      config.c, layer,
                      config.kind == LearnerKind::RvflPinv ? solve_pinv(h, targets)
                                                           : solve_ridge(h, targets, config.c)};
      result.diagnostics.train_loss = mean_squared_residual(h, model.weights, targets);
      result.model.model = std::move(model);
      break;
    }
    case LearnerKind::RvflPlus: {
      const auto layer =
          EnhancementLayer::init(train.x.cols(), config.nodes, config.activation, config.u, config.seed);
      const auto priv_layer = EnhancementLayer::init(train.x_priv->cols(), config.privileged_nodes(),
                                                     config.activation, config.u, config.seed + 1);
      auto [model, diag] =
          train_rvfl_plus(layer, priv_layer, train.x, *train.x_priv, targets, config.c, config.gamma);
      result.model.model = std::move(model);
      result.diagnostics = std::move(diag);
      break;
    }
    case LearnerKind::KrvflPlus: {
      auto [model, diag] = train_krvfl_plus(train.x, *train.x_priv, targets, config.kernel,
                                            config.privileged_kernel(), config.c, config.gamma);
      result.model.model = std::move(model);
      result.diagnostics = std::move(diag);
      break;
    }
  }
  return result;
}

Metrics evaluate(const TrainedModel& model, const Dataset& test) {
  return metrics(model.predict(test.x), test);
}

RunReport::RunReport(std::string learner, std::string dataset, std::string metric_name, LearnerConfig config)
    : learner_(std::move(learner)),
      dataset_(std::move(dataset)),
      metric_name_(std::move(metric_name)),
      config_(std::move(config)) {}

void RunReport::append(const TrialResult& trial) {
  trials_.push_back(trial);
  const auto n = static_cast<double>(trials_.size());
  double sum = 0.0;
  double time = 0.0;
  for (const auto& t : trials_) {
    sum += t.metric;
    time += t.wall_time_s;
  }
  mean_ = sum / n;
  double ss = 0.0;
  for (const auto& t : trials_) ss += (t.metric - mean_) * (t.metric - mean_);
  std_ = trials_.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  wall_time_s_ = time;
}

std::vector<std::uint64_t> RunReport::seeds() const {
  std::vector<std::uint64_t> out;
  for (const auto& t : trials_) out.push_back(t.seed);
  return out;
}

std::string metric_name(TaskKind task) { return is_classification(task) ? "accuracy" : "rmse"; }
bool higher_is_better(TaskKind task) { return is_classification(task); }

TrialResult run_holdout(const Dataset& train, const Dataset& test, const LearnerConfig& config, L1Mode l1) {
  Stopwatch clock;
  Dataset tr = train;
  Dataset te = test;
  if (l1 == L1Mode::FitOnTrain) {
    const auto scaling = fit_l1(train);
    tr = apply_l1(train, scaling);
    te = apply_l1(test, scaling);
  } else if (l1 == L1Mode::Joint) {
    Dataset both = train;
    both.x.resize(train.rows() + test.rows(), train.x.cols());
    both.x << train.x, test.x;
    both.y.resize(train.rows() + test.rows(), train.y.cols());
    both.y << train.y, test.y;
    if (train.x_priv && test.x_priv) {
      Matrix priv(train.rows() + test.rows(), train.x_priv->cols());
      priv << *train.x_priv, *test.x_priv;
      both.x_priv = std::move(priv);
    } else {
      both.x_priv.reset();
    }
    auto scaling = fit_l1(both);
    if (train.x_priv && !scaling.privileged) scaling.privileged = fit_l1(train).privileged;
    tr = apply_l1(train, scaling);
    te = test.x_priv ? apply_l1(test, scaling) : apply_l1(test, L1Scaling{scaling.normal, std::nullopt});
  }
  const FitResult fitted = fit(config, tr);
  const Metrics m = evaluate(fitted.model, te);

  TrialResult trial;
  trial.seed = config.seed;
  trial.metric = m.value();
  trial.train_rows = train.rows();
  trial.test_rows = test.rows();
  trial.wall_time_s = clock.seconds();
  return trial;
}

RunReport run_cv(const Dataset& data, const LearnerConfig& config, const FoldPlan& folds, L1Mode l1,
                 const std::string& dataset_name) {
  if (static_cast<Index>(folds.assignments.size()) != data.rows()) {
    throw std::invalid_argument("fold plan covers " + std::to_string(folds.assignments.size()) +
                                " rows, dataset has " + std::to_string(data.rows()));
  }
  data.validate();
  const Dataset prepared = l1 == L1Mode::Joint ? normalize_l1(data) : data;
  const L1Mode per_fold = l1 == L1Mode::Joint ? L1Mode::None : l1;

  std::vector<TrialResult> trials(static_cast<std::size_t>(folds.k));
  parallel_for(folds.k, [&](int fold) {
    const Dataset train = take_rows(prepared, folds.train_rows(fold));
    const Dataset test = take_rows(prepared, folds.test_rows(fold));
    if (test.rows() == 0 || train.rows() == 0) throw std::invalid_argument("empty fold " + std::to_string(fold));
    LearnerConfig cfg = config;
    cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(fold));
    TrialResult t = run_holdout(train, test, cfg, per_fold);
    t.index = fold;
    t.fold = fold;
    trials[static_cast<std::size_t>(fold)] = t;
  });

  RunReport report(std::string(to_string(config.kind)), dataset_name, metric_name(data.task), config);
  for (const auto& t : trials) report.append(t);
  return report;
}

ParamRange ParamRange::fixed(double value) { return choices({value}); }

ParamRange ParamRange::log_uniform(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log-uniform range needs 0 < lo <= hi");
  ParamRange r;
  r.interval_ = true;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

ParamRange ParamRange::choices(std::vector<double> values) {
  ParamRange r;
  r.values_ = std::move(values);
  return r;
}

bool ParamRange::empty() const { return !interval_ && values_.empty(); }

double ParamRange::draw(std::mt19937_64& rng) const {
  if (interval_) {
    std::uniform_real_distribution<double> unit(std::log(lo_), std::log(hi_));
    const double v = unit(rng);
    return lo_ == hi_ ? lo_ : std::exp(v);
  }
  if (values_.empty()) throw std::invalid_argument("cannot draw from an empty parameter range");
  std::uniform_int_distribution<std::size_t> pick(0, values_.size() - 1);
  return values_[pick(rng)];
}

std::vector<double> ParamRange::grid() const {
  if (interval_) {
    if (lo_ == hi_) return {lo_};
    throw std::invalid_argument("grid search needs finite choices, got interval " + describe());
  }
  return values_;
}

std::string ParamRange::describe() const {
  std::ostringstream out;
  if (interval_) {
    out << "loguniform[" << lo_ << ", " << hi_ << "]";
  } else {
    out << '{';
    for (std::size_t i = 0; i < values_.size(); ++i) out << (i ? ", " : "") << values_[i];
    out << '}';
  }
  return out.str();
}

std::vector<double> default_u_grid() {
  std::vector<double> grid;
  for (int half_steps = -10; half_steps <= 10; ++half_steps) grid.push_back(std::pow(2.0, half_steps / 2.0));
  return grid;
}

void SearchSpace::validate() const {
  if (budget < 1) throw std::invalid_argument("search budget must be >= 1");
  if (c.empty() || gamma.empty() || u.empty() || tau.empty()) throw std::invalid_argument("empty search space");
}

RunReport validate_config(const Dataset& train, const LearnerConfig& config, const ValidationSpec& validation,
                          L1Mode l1) {
  if (const auto* holdout = std::get_if<Holdout>(&validation)) {
    RunReport report(std::string(to_string(config.kind)), "validation", metric_name(train.task), config);
    report.append(run_holdout(train, holdout->validation, config, l1));
    return report;
  }
  const auto& cv = std::get<CrossValidation>(validation);
  return run_cv(train, config, make_folds(train.rows(), cv.k, cv.seed), l1, "validation");
}

namespace {

SearchResult pick_best(std::vector<SearchDraw> draws, std::vector<RunReport> reports, TaskKind task) {
  if (draws.empty()) throw std::invalid_argument("empty search space");
  const bool higher = higher_is_better(task);
  std::size_t best = 0;
  for (std::size_t i = 1; i < draws.size(); ++i) {
    if (better(draws[i].score, draws[best].score, higher)) best = i;
  }
  SearchResult result;
  result.best = draws[best].config;
  result.best_score = draws[best].score;
  result.report = std::move(reports[best]);
  result.draws = std::move(draws);
  return result;
}

SearchResult evaluate_candidates(const Dataset& train, std::vector<LearnerConfig> candidates,
                                 const ValidationSpec& validation, L1Mode l1) {
  std::vector<RunReport> reports(candidates.size());
  parallel_for(static_cast<int>(candidates.size()), [&](int i) {
    reports[static_cast<std::size_t>(i)] = validate_config(train, candidates[static_cast<std::size_t>(i)], validation, l1);
  });
  std::vector<SearchDraw> draws;
  for (std::size_t i = 0; i < candidates.size(); ++i) draws.push_back({candidates[i], reports[i].mean()});
  return pick_best(std::move(draws), std::move(reports), train.task);
}

}  // namespace

SearchResult random_search(const Dataset& train, const SearchSpace& space, const ValidationSpec& validation,
                           std::uint64_t seed, L1Mode l1) {
  space.validate();
  std::mt19937_64 rng(seed);
  std::vector<LearnerConfig> candidates;
  for (Index b = 0; b < space.budget; ++b) {
    LearnerConfig cfg = space.base;
    // every dimension is drawn on every step so the stream does not depend on the learner kind
    const double c = space.c.draw(rng);
    const double gamma = space.gamma.draw(rng);
    const double u = space.u.draw(rng);
    const double tau = space.tau.draw(rng);
    if (uses_c(cfg.kind)) cfg.c = c;
    if (uses_privileged(cfg.kind)) cfg.gamma = gamma;
    if (uses_random_layer(cfg.kind)) cfg.u = u;
    if (uses_tau(cfg)) set_tau(cfg, tau);
    if (!space.activations.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, space.activations.size() - 1);
      cfg.activation = space.activations[pick(rng)];
    }
    candidates.push_back(cfg);
  }
  return evaluate_candidates(train, std::move(candidates), validation, l1);
}

SearchResult grid_search(const Dataset& train, const SearchSpace& space, const ValidationSpec& validation,
                         L1Mode l1) {
  const LearnerConfig& base = space.base;
  const std::vector<Activation> activations =
      space.activations.empty() || !uses_random_layer(base.kind) ? std::vector<Activation>{base.activation}
                                                                 : space.activations;
  const auto c_grid = uses_c(base.kind) ? space.c.grid() : std::vector<double>{base.c};
  const auto gamma_grid = uses_privileged(base.kind) ? space.gamma.grid() : std::vector<double>{base.gamma};
  const auto u_grid = uses_random_layer(base.kind) ? space.u.grid() : std::vector<double>{base.u};
  const auto tau_grid = uses_tau(base) ? space.tau.grid() : std::vector<double>{0.0};

  std::vector<LearnerConfig> candidates;
  for (const auto act : activations) {
    for (const double c : c_grid) {
      for (const double gamma : gamma_grid) {
        for (const double u : u_grid) {
          for (const double tau : tau_grid) {
            LearnerConfig cfg = base;
            cfg.activation = act;
            cfg.c = c;
            cfg.gamma = gamma;
            cfg.u = u;
            if (uses_tau(cfg)) set_tau(cfg, tau);
            candidates.push_back(cfg);
          }
        }
      }
    }
  }
  if (candidates.empty()) throw std::invalid_argument("empty search space");
  return evaluate_candidates(train, std::move(candidates), validation, l1);
}

ActivationChoice select_activation(const Dataset& train, const LearnerConfig& base, const ValidationSpec& validation,
                                   L1Mode l1) {
  ActivationChoice choice;
  const bool higher = higher_is_better(train.task);
  for (const auto act : kAllActivations) {
    LearnerConfig cfg = base;
    cfg.activation = act;
    const double score = validate_config(train, cfg, validation, l1).mean();
    choice.scores.emplace_back(act, score);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < choice.scores.size(); ++i) {
    if (better(choice.scores[i].second, choice.scores[best].second, higher)) best = i;
  }
  choice.best = choice.scores[best].first;
  return choice;
}

std::vector<RunReport> run_noise_experiment(const Dataset& data, double power_dbw,
                                            const std::vector<LearnerConfig>& learners,
                                            const std::vector<std::uint64_t>& seeds, int folds, L1Mode l1,
                                            const std::string& dataset_name) {
  if (data.x_priv) throw std::invalid_argument("noise experiment expects a dataset without a privileged split");
  std::vector<RunReport> reports;
  for (const auto& cfg : learners) {
    reports.emplace_back(std::string(to_string(cfg.kind)), dataset_name, metric_name(data.task), cfg);
    reports.back().noise_dbw = power_dbw;
  }
  int index = 0;
  for (const auto seed : seeds) {
    Dataset noisy = add_white_noise(data, power_dbw, seed);
    noisy.x_priv = data.x;
    const FoldPlan plan = make_folds(data.rows(), folds, seed);
    for (std::size_t l = 0; l < learners.size(); ++l) {
      LearnerConfig cfg = learners[l];
      cfg.seed = seed;
      const RunReport run = run_cv(noisy, cfg, plan, l1, dataset_name);
      for (TrialResult t : run.trials()) {
        t.index = index + t.fold;
        reports[l].append(t);
      }
    }
    index += folds;
  }
  return reports;
}

LupiBenchmarkResult run_lupi_benchmark(const LupiBenchmarkConfig& config) {
  LearnerConfig ridge = default_config(LearnerKind::RvflRidge);
  ridge.nodes = config.nodes;
  ridge.u = config.u;
  ridge.activation = config.activation;
  LearnerConfig plus = default_config(LearnerKind::RvflPlus);
  plus.nodes = config.nodes;
  plus.priv_nodes = config.priv_nodes;
  plus.u = config.u;
  plus.activation = config.activation;

  const int n_seeds = static_cast<int>(config.seeds.size());
  std::vector<TrialResult> ridge_trials(config.seeds.size());
  std::vector<TrialResult> plus_trials(config.seeds.size());
  std::vector<LearnerConfig> ridge_best(config.seeds.size(), ridge);
  std::vector<LearnerConfig> plus_best(config.seeds.size(), plus);

  parallel_for(n_seeds, [&](int i) {
    const auto seed = config.seeds[static_cast<std::size_t>(i)];
    const synthetic::LupiTask task(config.task, derive_seed(seed, 0));
    const Dataset train = task.sample(config.train_rows, derive_seed(seed, 1));
    const Dataset validation = task.sample(config.validation_rows, derive_seed(seed, 2));
    const Dataset test = task.sample(config.test_rows, derive_seed(seed, 3));
    const ValidationSpec spec = Holdout{validation};

    SearchSpace space;
    space.c = ParamRange::choices(config.c_grid);
    space.gamma = ParamRange::choices(config.gamma_grid);
    space.u = ParamRange::fixed(config.u);

    space.base = ridge;
    space.base.seed = seed;
    const auto r = grid_search(train, space, spec, L1Mode::None).best;
    space.base = plus;
    space.base.seed = seed;
    const auto p = grid_search(train, space, spec, L1Mode::None).best;

    auto& rt = ridge_trials[static_cast<std::size_t>(i)];
    rt = run_holdout(train, test, r, L1Mode::None);
    rt.index = i;
    auto& pt = plus_trials[static_cast<std::size_t>(i)];
    pt = run_holdout(train, test, p, L1Mode::None);
    pt.index = i;
    ridge_best[static_cast<std::size_t>(i)] = r;
    plus_best[static_cast<std::size_t>(i)] = p;
  });

  LupiBenchmarkResult result{RunReport("rvfl-ridge", "synthetic-lupi", "accuracy", ridge),
                             RunReport("rvfl-plus", "synthetic-lupi", "accuracy", plus)};
  for (int i = 0; i < n_seeds; ++i) {
    result.baseline.append(ridge_trials[static_cast<std::size_t>(i)]);
    result.privileged.append(plus_trials[static_cast<std::size_t>(i)]);
  }
  return result;
}

void write_report_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  const bool with_noise =
      std::any_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.noise_dbw.has_value(); });
  out << "learner,dataset,metric,mean,std,time_s,seed,config_hash";
  if (with_noise) out << ",noise_dbw";
  out << '\n';
  for (const auto& r : reports) {
    out << r.learner() << ',' << r.dataset() << ',' << r.metric_name() << ',' << format_double(r.mean()) << ','
        << format_double(r.std()) << ',' << format_double(r.wall_time_s()) << ',' << r.config().seed << ','
        << config_hash(r.config());
    if (with_noise) out << ',' << (r.noise_dbw ? format_double(*r.noise_dbw) : "");
    out << '\n';
  }
}

void write_report_table(std::ostream& out, const std::vector<RunReport>& reports) {
  const bool accuracy =
      std::all_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.metric_name() == "accuracy"; });
  const bool with_noise =
      std::any_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.noise_dbw.has_value(); });
  out << std::left << std::setw(14) << "Method" << std::setw(20) << (accuracy ? "Acc. (%)" : "RMSE")
      << std::setw(12) << "Time (s)";
  if (with_noise) {
    out << std::setw(8) << "Trials" << "Noise (dBW)";
  } else {
    out << "Trials";
  }
  out << '\n';
  for (const auto& r : reports) {
    std::ostringstream cell;
    cell << std::fixed << std::setprecision(accuracy ? 2 : 4) << r.mean() << " ± " << r.std();
    std::ostringstream time;
    time << std::fixed << std::setprecision(4) << r.wall_time_s();
    // "±" is two bytes in UTF-8; pad one extra so columns line up
    out << std::setw(14) << r.learner() << std::setw(21) << cell.str() << std::setw(12) << time.str();
    if (with_noise) {
      out << std::setw(8) << r.trials().size() << (r.noise_dbw ? format_double(*r.noise_dbw) : "");
    } else {
      out << r.trials().size();
    }
    out << '\n';
  }
  out << std::right;
}

}  // namespace rvfl
