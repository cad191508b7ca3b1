#include "rvfl/model_io.hpp"

#include <cstdlib>
#include <fstream>
#include <ios>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rvfl {

namespace {

constexpr const char* kMagic = "rvflplus-model";
constexpr int kVersion = 1;

void put_double(std::ostream& out, double v) { out << std::hexfloat << v << std::defaultfloat; }

void put_matrix(std::ostream& out, const char* name, const Matrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      put_double(out, m(i, j));
    }
    out << '\n';
  }
}

void put_layer(std::ostream& out, const char* name, const EnhancementLayer& layer) {
  out << "layer " << name << ' ' << to_string(layer.activation()) << ' ';
  put_double(out, layer.scale());
  out << ' ' << layer.seed() << '\n';
  put_matrix(out, "weights", layer.weights());
  put_matrix(out, "biases", Matrix(layer.biases()));
}

void put_kernel(std::ostream& out, const char* name, const KernelSpec& spec) {
  out << "kernel " << name << ' ' << (spec.includes_linear ? 1 : 0) << ' ';
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GaussianKernel>) {
          out << "gaussian ";
          put_double(out, k.tau);
        } else if constexpr (std::is_same_v<K, PolynomialKernel>) {
          out << "polynomial " << k.degree << ' ';
          put_double(out, k.coef);
        } else {
          out << "none";
        }
      },
      spec.mercer);
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next non-comment line, split into whitespace tokens.
  std::istringstream line(const std::string& expect) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_no_;
      if (text.empty() || text[0] == '#') continue;
      std::istringstream tokens(text);
      std::string head;
      tokens >> head;
      if (head != expect) fail("expected '" + expect + "', found '" + head + "'");
      return tokens;
    }
    fail("unexpected end of model file, expected '" + expect + "'");
  }

  static double to_double(const std::string& token) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || *end != '\0') throw DataError("bad number '" + token + "' in model file");
    return v;
  }

  double number(std::istringstream& tokens) {
    std::string t;
    if (!(tokens >> t)) fail("missing number");
    return to_double(t);
  }

  std::string word(std::istringstream& tokens) {
    std::string t;
    if (!(tokens >> t)) fail("missing field");
    return t;
  }

  Matrix matrix(const std::string& name) {
    auto head = line("matrix");
    if (word(head) != name) fail("expected matrix '" + name + "'");
    long long rows = -1;
    long long cols = -1;
    if (!(head >> rows >> cols) || rows < 0 || cols < 0) fail("bad matrix shape");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      std::string text;
      if (cols == 0) {
        // an all-empty row is still written as a blank line
        std::getline(in_, text);
        ++line_no_;
        continue;
      }
      if (!std::getline(in_, text)) fail("truncated matrix '" + name + "'");
      ++line_no_;
      std::istringstream tokens(text);
      for (Index j = 0; j < cols; ++j) m(i, j) = number(tokens);
    }
    return m;
  }

  EnhancementLayer layer(const std::string& name) {
    auto head = line("layer");
    if (word(head) != name) fail("expected layer '" + name + "'");
    const Activation act = parse_activation(word(head));
    const double u = number(head);
    std::uint64_t seed = 0;
    if (!(head >> seed)) fail("bad layer seed");
    Matrix weights = matrix("weights");
    Matrix biases = matrix("biases");
    if (biases.cols() != 1 && biases.rows() != 0) fail("biases must be a column");
    Vector b = biases.rows() == 0 ? Vector(0) : Vector(biases.col(0));
    return EnhancementLayer(std::move(weights), std::move(b), act, u, seed);
  }

  KernelSpec kernel(const std::string& name) {
    auto head = line("kernel");
    if (word(head) != name) fail("expected kernel '" + name + "'");
    KernelSpec spec;
    spec.includes_linear = word(head) == "1";
    const std::string kind = word(head);
    if (kind == "gaussian") {
      spec.mercer = GaussianKernel{number(head)};
    } else if (kind == "polynomial") {
      int degree = 0;
      if (!(head >> degree)) fail("bad polynomial degree");
      spec.mercer = PolynomialKernel{degree, number(head)};
    } else if (kind == "none") {
      spec.mercer = NoMercerKernel{};
    } else {
      fail("unknown kernel '" + kind + "'");
    }
    return spec;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("model file line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

}  // namespace

void save_model(std::ostream& out, const TrainedModel& model, const LearnerConfig* config) {
  out << kMagic << ' ' << kVersion << '\n';
  if (config) {
    for (const auto& [k, v] : config->to_key_values()) out << "# " << k << " = " << v << '\n';
  }
  out << "learner " << to_string(model.kind()) << '\n';
  out << "task " << to_string(model.task) << '\n';
  out << "binary_rule " << (model.binary_rule == BinaryRule::Sign ? "sign" : "ova") << '\n';
  out << "labels " << model.class_labels.size() << '\n';
  for (const auto& label : model.class_labels) out << "label " << label << '\n';
  out << "input_l1 " << (model.input_l1 ? 1 : 0) << '\n';
  if (model.input_l1) put_matrix(out, "column_sums", Matrix(*model.input_l1));

  std::visit(
      [&out](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RvflModel>) {
          out << "c ";
          put_double(out, m.c);
          out << '\n';
          put_layer(out, "normal", m.layer);
          put_matrix(out, "w", m.weights);
        } else if constexpr (std::is_same_v<M, RvflPlusModel>) {
          out << "c ";
          put_double(out, m.c);
          out << "\ngamma ";
          put_double(out, m.gamma);
          out << '\n';
          put_layer(out, "normal", m.layer);
          put_layer(out, "privileged", m.priv_layer);
          put_matrix(out, "w", m.weights);
          put_matrix(out, "w_corr", m.correction_weights);
        } else {
          out << "c ";
          put_double(out, m.c);
          out << "\ngamma ";
          put_double(out, m.gamma);
          out << '\n';
          put_kernel(out, "normal", m.spec);
          put_kernel(out, "privileged", m.spec_priv);
          put_matrix(out, "x_train", m.x_train);
          put_matrix(out, "w_kernel", m.w_kernel);
        }
      },
      model.model);
  out << "end\n";
}

TrainedModel load_model(std::istream& in) {
  Reader r(in);
  std::string text;
  if (!std::getline(in, text)) throw DataError("empty model file");
  {
    std::istringstream head(text);
    std::string magic;
    int version = 0;
    if (!(head >> magic >> version) || magic != kMagic) throw DataError("not a model file");
    if (version != kVersion) throw DataError("unsupported model version " + std::to_string(version));
  }
  TrainedModel model;
  auto learner_line = r.line("learner");
  const LearnerKind kind = parse_learner(r.word(learner_line));
  auto task_line = r.line("task");
  model.task = parse_task(r.word(task_line));
  auto rule_line = r.line("binary_rule");
  model.binary_rule = r.word(rule_line) == "sign" ? BinaryRule::Sign : BinaryRule::OneVsAll;
  auto labels_line = r.line("labels");
  std::size_t n_labels = 0;
  if (!(labels_line >> n_labels)) r.fail("bad label count");
  for (std::size_t i = 0; i < n_labels; ++i) {
    auto l = r.line("label");
    std::string label;
    std::getline(l >> std::ws, label);
    model.class_labels.push_back(label);
  }
  auto l1_line = r.line("input_l1");
  if (r.word(l1_line) == "1") {
    const Matrix sums = r.matrix("column_sums");
    if (sums.cols() != 1) r.fail("column sums must be a column");
    model.input_l1 = Vector(sums.col(0));
  }

  auto c_line = r.line("c");
  const double c = r.number(c_line);
  switch (kind) {
    case LearnerKind::RvflPinv:
    case LearnerKind::RvflRidge: {
      RvflModel m;
      m.variant = kind == LearnerKind::RvflPinv ? RvflModel::Variant::Pinv : RvflModel::Variant::Ridge;
      m.c = c;
      m.layer = r.layer("normal");
      m.weights = r.matrix("w");
      if (m.weights.rows() != m.layer.width()) r.fail("weight rows do not match layer width");
      model.model = std::move(m);
      break;
    }
    case LearnerKind::RvflPlus: {
      RvflPlusModel m;
      m.c = c;
      auto g = r.line("gamma");
      m.gamma = r.number(g);
      m.layer = r.layer("normal");
      m.priv_layer = r.layer("privileged");
      m.weights = r.matrix("w");
      m.correction_weights = r.matrix("w_corr");
      if (m.weights.rows() != m.layer.width()) r.fail("weight rows do not match layer width");
      model.model = std::move(m);
      break;
    }
    case LearnerKind::KrvflPlus: {
      KrvflPlusModel m;
      m.c = c;
      auto g = r.line("gamma");
      m.gamma = r.number(g);
      m.spec = r.kernel("normal");
      m.spec_priv = r.kernel("privileged");
      m.x_train = r.matrix("x_train");
      m.w_kernel = r.matrix("w_kernel");
      if (m.w_kernel.rows() != m.x_train.rows()) r.fail("kernel weights do not match training rows");
      model.model = std::move(m);
      break;
    }
  }
  r.line("end");
  return model;
}

void save_model_file(const std::filesystem::path& path, const TrainedModel& model, const LearnerConfig* config) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    save_model(out, model, config);
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw DataError("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

TrainedModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  return load_model(in);
}

}  // namespace rvfl
