#include "rvfl/run_config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rvfl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(const std::string& text, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') throw std::invalid_argument(key + ": not a number: '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0') throw std::invalid_argument(key + ": not an integer: '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument(key + ": expected true/false, got '" + text + "'");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool HyperSetting::is_fixed() const {
  return text.find(':') == std::string::npos && text.find(',') == std::string::npos;
}

double HyperSetting::value() const {
  if (!is_fixed()) throw std::invalid_argument("'" + text + "' is a range, not a single value");
  return parse_number(trim(text), "value");
}

ParamRange HyperSetting::range() const {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw std::invalid_argument("range must be lo:hi, got '" + text + "'");
    return ParamRange::log_uniform(parse_number(parts[0], "range"), parse_number(parts[1], "range"));
  }
  std::vector<double> values;
  for (const auto& p : split(text, ',')) values.push_back(parse_number(p, "list"));
  return ParamRange::choices(std::move(values));
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "subcommand") subcommand = value;
  else if (key == "dataset") dataset = value;
  else if (key == "validation") validation = value;
  else if (key == "model") model = value;
  else if (key == "output") output = value;
  else if (key == "report") report = value;
  else if (key == "task") task = parse_task(value);
  else if (key == "header") has_header = parse_bool(value, key);
  else if (key == "label") label_column = value;
  else if (key == "normal_features") {
    if (value.empty() || value == "all") {
      normal_features.reset();
    } else if (value == "half") {
      normal_features = 0;
    } else {
      const auto v = parse_integer(value, key);
      if (v < 1) throw std::invalid_argument("normal_features must be >= 1");
      normal_features = v;
    }
  } else if (key == "l1") l1 = parse_l1_mode(value);
  else if (key == "learner") learner = parse_learner(value);
  else if (key == "learners") {
    learners = value;
    if (learner_list().empty()) throw std::invalid_argument("learners must name at least one learner");
  }
  else if (key == "C") c.text = value;
  else if (key == "gamma") gamma.text = value;
  else if (key == "u") u.text = value;
  else if (key == "tau") tau.text = value;
  else if (key == "activation") {
    activation = value;
    (void)activations();
  } else if (key == "P") {
    const auto v = parse_integer(value, key);
    if (v < 0) throw std::invalid_argument("P must be >= 0");
    nodes = v;
  } else if (key == "priv_P") {
    if (value.empty() || value == "same") {
      priv_nodes.reset();
    } else {
      const auto v = parse_integer(value, key);
      if (v < 0) throw std::invalid_argument("priv_P must be >= 0");
      priv_nodes = v;
    }
  } else if (key == "kernel") {
    if (value != "gaussian" && value != "polynomial" && value != "none")
      throw std::invalid_argument("kernel must be gaussian, polynomial or none");
    kernel = value;
  } else if (key == "degree") degree = static_cast<int>(parse_integer(value, key));
  else if (key == "coef") coef = parse_number(value, key);
  else if (key == "linear") linear = parse_bool(value, key);
  else if (key == "binary_rule") {
    if (value == "sign") binary_rule = BinaryRule::Sign;
    else if (value == "ova") binary_rule = BinaryRule::OneVsAll;
    else throw std::invalid_argument("binary_rule must be sign or ova");
  } else if (key == "folds") {
    folds = static_cast<int>(parse_integer(value, key));
    if (folds < 2) throw std::invalid_argument("folds must be >= 2");
  } else if (key == "trials") {
    trials = static_cast<int>(parse_integer(value, key));
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  } else if (key == "budget") {
    budget = parse_integer(value, key);
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  } else if (key == "seed") {
    const auto v = parse_integer(value, key);
    if (v < 0) throw std::invalid_argument("seed must be >= 0");
    seed = static_cast<std::uint64_t>(v);
  } else if (key == "noise_dbw") noise_dbw = parse_number(value, key);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> RunConfig::to_key_values() const {
  const LearnerConfig defaults = default_config(learner);
  return {
      {"subcommand", subcommand},
      {"dataset", dataset.string()},
      {"validation", validation.string()},
      {"model", model.string()},
      {"output", output.string()},
      {"report", report.string()},
      {"task", std::string(to_string(task))},
      {"header", has_header ? "true" : "false"},
      {"label", label_column},
      {"normal_features", !normal_features ? "all" : *normal_features == 0 ? "half" : std::to_string(*normal_features)},
      {"l1", std::string(to_string(l1))},
      {"learner", std::string(to_string(learner))},
      {"learners", learners},
      {"C", c.text},
      {"gamma", gamma.text.empty() ? fmt(defaults.gamma) : gamma.text},
      {"u", u.text},
      {"tau", tau.text},
      {"activation", activation},
      {"P", std::to_string(nodes)},
      {"priv_P", priv_nodes ? std::to_string(*priv_nodes) : "same"},
      {"kernel", kernel},
      {"degree", std::to_string(degree)},
      {"coef", fmt(coef)},
      {"linear", linear ? "true" : "false"},
      {"binary_rule", binary_rule == BinaryRule::Sign ? "sign" : "ova"},
      {"folds", std::to_string(folds)},
      {"trials", std::to_string(trials)},
      {"budget", std::to_string(budget)},
      {"seed", std::to_string(seed)},
      {"noise_dbw", fmt(noise_dbw)},
  };
}

std::vector<Activation> RunConfig::activations() const {
  if (activation == "all") return {kAllActivations.begin(), kAllActivations.end()};
  std::vector<Activation> out;
  for (const auto& name : split(activation, ',')) out.push_back(parse_activation(name));
  return out;
}

bool RunConfig::needs_search() const {
  const HyperSetting g = gamma.text.empty() ? HyperSetting{"1"} : gamma;
  return !c.is_fixed() || !g.is_fixed() || !u.is_fixed() || !tau.is_fixed() || activations().size() > 1;
}

std::vector<LearnerKind> RunConfig::learner_list() const {
  std::vector<LearnerKind> out;
  for (const auto& name : split(learners, ',')) {
    if (!name.empty()) out.push_back(parse_learner(name));
  }
  return out;
}

LearnerConfig RunConfig::learner_config_for(LearnerKind kind) const {
  LearnerConfig cfg = default_config(kind);
  if (c.is_fixed()) cfg.c = c.value();
  if (!gamma.text.empty() && gamma.is_fixed()) cfg.gamma = gamma.value();
  if (u.is_fixed()) cfg.u = u.value();
  cfg.nodes = nodes;
  cfg.priv_nodes = priv_nodes;
  const auto acts = activations();
  cfg.activation = acts.front();
  KernelSpec spec;
  spec.includes_linear = linear;
  if (kernel == "gaussian") {
    spec.mercer = GaussianKernel{tau.is_fixed() ? tau.value() : GaussianKernel{}.tau};
  } else if (kernel == "polynomial") {
    spec.mercer = PolynomialKernel{degree, coef};
  } else {
    spec.mercer = NoMercerKernel{};
  }
  cfg.kernel = spec;
  cfg.binary_rule = binary_rule;
  cfg.seed = seed;
  return cfg;
}

SearchSpace RunConfig::search_space() const {
  SearchSpace space;
  space.base = learner_config();
  space.c = c.range();
  space.gamma = gamma.text.empty() ? ParamRange::fixed(space.base.gamma) : gamma.range();
  space.u = u.range();
  space.tau = tau.range();
  space.activations = activations();
  space.budget = budget;
  return space;
}

CsvOptions RunConfig::csv_options() const {
  CsvOptions opts;
  opts.has_header = has_header;
  opts.label_column = label_column;
  return opts;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      cfg.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  return parse_run_config(in);
}

void write_run_config(std::ostream& out, const RunConfig& config) {
  for (const auto& [k, v] : config.to_key_values()) out << k << " = " << v << '\n';
}

}  // namespace rvfl
