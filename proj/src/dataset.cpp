#include "rvfl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace rvfl {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Binary: return "binary";
    case TaskKind::Multiclass: return "multiclass";
    case TaskKind::Regression: return "regression";
  }
  return "unknown";
}

TaskKind parse_task(std::string_view text) {
  if (text == "binary") return TaskKind::Binary;
  if (text == "multiclass") return TaskKind::Multiclass;
  if (text == "regression") return TaskKind::Regression;
  throw std::invalid_argument("unknown task kind '" + std::string(text) + "'");
}

void Dataset::validate() const {
  if (x.rows() < 1) throw DataError("dataset has no rows");
  if (y.rows() != x.rows()) {
    throw DataError("target row count " + std::to_string(y.rows()) + " differs from feature row count " +
                    std::to_string(x.rows()));
  }
  if (x_priv && x_priv->rows() != x.rows()) {
    throw DataError("privileged row count " + std::to_string(x_priv->rows()) + " differs from " +
                    std::to_string(x.rows()));
  }
  if (is_classification(task)) {
    for (Index i = 0; i < y.rows(); ++i) {
      Index ones = 0;
      for (Index j = 0; j < y.cols(); ++j) {
        const double v = y(i, j);
        if (v == 1.0) {
          ++ones;
        } else if (v != 0.0) {
          throw DataError("row " + std::to_string(i) + " is not one-hot");
        }
      }
      if (ones != 1) throw DataError("row " + std::to_string(i) + " is not one-hot");
    }
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, delimiter)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::size_t resolve_label_column(const CsvOptions& options, const std::vector<std::string>& header,
                                 std::size_t columns) {
  if (options.label_column.empty()) return columns - 1;
  if (options.has_header) {
    const auto it = std::find(header.begin(), header.end(), options.label_column);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  std::size_t index = 0;
  const auto& text = options.label_column;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc() || ptr != text.data() + text.size() || index >= columns) {
    throw DataError("unknown label column '" + options.label_column + "'");
  }
  return index;
}

}  // namespace

Dataset parse_csv(std::istream& in, const CsvOptions& options, TaskKind task) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_line(line, options.delimiter);
    if (options.has_header && header.empty() && rows.empty()) {
      header = std::move(cells);
      columns = header.size();
      continue;
    }
    if (columns == 0) columns = cells.size();
    if (cells.size() != columns) {
      throw DataError("malformed row " + std::to_string(rows.size()) + " (line " + std::to_string(line_no) +
                      "): expected " + std::to_string(columns) + " columns, found " +
                      std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw DataError("CSV contains no data rows");
  if (columns < 2) throw DataError("CSV needs at least one feature column and a label column");

  const std::size_t label_col = resolve_label_column(options, header, columns);
  const auto n_rows = static_cast<Index>(rows.size());
  const auto n_features = static_cast<Index>(columns - 1);

  Dataset data;
  data.task = task;
  data.x.resize(n_rows, n_features);
  for (Index i = 0; i < n_rows; ++i) {
    Index col = 0;
    for (std::size_t c = 0; c < columns; ++c) {
      if (c == label_col) continue;
      const auto value = parse_number(rows[i][c]);
      if (!value) {
        throw DataError("non-numeric feature cell '" + rows[i][c] + "' at row " + std::to_string(i) +
                        ", column " + std::to_string(c));
      }
      data.x(i, col++) = *value;
    }
  }

  if (task == TaskKind::Regression) {
    data.y.resize(n_rows, 1);
    for (Index i = 0; i < n_rows; ++i) {
      const auto value = parse_number(rows[i][label_col]);
      if (!value) {
        throw DataError("non-numeric regression target '" + rows[i][label_col] + "' at row " + std::to_string(i));
      }
      data.y(i, 0) = *value;
    }
  } else {
    std::set<std::string> distinct;
    for (const auto& row : rows) distinct.insert(row[label_col]);
    data.class_labels.assign(distinct.begin(), distinct.end());
    // numeric labels sort numerically so that "10" follows "9"
    const bool numeric = std::all_of(data.class_labels.begin(), data.class_labels.end(),
                                     [](const std::string& s) { return parse_number(s).has_value(); });
    if (numeric) {
      std::sort(data.class_labels.begin(), data.class_labels.end(),
                [](const std::string& a, const std::string& b) { return *parse_number(a) < *parse_number(b); });
    }
    if (task == TaskKind::Binary && data.class_labels.size() != 2) {
      throw DataError("binary task needs exactly 2 distinct labels, found " +
                      std::to_string(data.class_labels.size()));
    }
    const auto m = static_cast<Index>(data.class_labels.size());
    data.y = Matrix::Zero(n_rows, std::max<Index>(m, 1));
    for (Index i = 0; i < n_rows; ++i) {
      const auto it = std::find(data.class_labels.begin(), data.class_labels.end(), rows[i][label_col]);
      data.y(i, it - data.class_labels.begin()) = 1.0;
    }
  }
  data.validate();
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options, TaskKind task) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset '" + path.string() + "'");
  return parse_csv(in, options, task);
}

void write_csv(std::ostream& out, const Dataset& data) {
  const auto old_precision = out.precision(17);
  for (Index j = 0; j < data.x.cols(); ++j) out << "x" << j << ',';
  for (Index j = 0; j < data.privileged_features(); ++j) out << "p" << j << ',';
  out << "label\n";
  const auto classes = is_classification(data.task) ? class_indices(data) : std::vector<Index>{};
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.x.cols(); ++j) out << data.x(i, j) << ',';
    for (Index j = 0; j < data.privileged_features(); ++j) out << (*data.x_priv)(i, j) << ',';
    if (is_classification(data.task)) {
      const auto c = static_cast<std::size_t>(classes[i]);
      if (c < data.class_labels.size()) {
        out << data.class_labels[c];
      } else {
        out << c;
      }
    } else {
      out << data.y(i, 0);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

namespace {

Vector column_abs_sums(const Matrix& m) { return m.cwiseAbs().colwise().sum().transpose(); }

Matrix scale_columns(const Matrix& m, const Vector& sums) {
  Matrix out = m;
  for (Index j = 0; j < m.cols(); ++j) {
    if (sums(j) > 0.0) out.col(j) /= sums(j);
  }
  return out;
}

}  // namespace

L1Scaling fit_l1(const Dataset& data) {
  L1Scaling scaling;
  scaling.normal = column_abs_sums(data.x);
  if (data.x_priv) scaling.privileged = column_abs_sums(*data.x_priv);
  return scaling;
}

Dataset apply_l1(const Dataset& data, const L1Scaling& scaling) {
  if (scaling.normal.size() != data.x.cols()) throw std::invalid_argument("L1 scaling width mismatch");
  Dataset out = data;
  out.x = scale_columns(data.x, scaling.normal);
  if (data.x_priv) {
    if (!scaling.privileged || scaling.privileged->size() != data.x_priv->cols()) {
      throw std::invalid_argument("L1 scaling has no matching privileged part");
    }
    out.x_priv = scale_columns(*data.x_priv, *scaling.privileged);
  }
  return out;
}

Matrix apply_l1(const Matrix& x, const Vector& column_sums) {
  if (column_sums.size() != x.cols()) throw std::invalid_argument("L1 scaling width mismatch");
  return scale_columns(x, column_sums);
}

Dataset normalize_l1(const Dataset& data) { return apply_l1(data, fit_l1(data)); }

Dataset split_privileged(const Dataset& data, Index normal_count) {
  if (data.x_priv) throw std::invalid_argument("dataset already has privileged features");
  if (normal_count < 1 || normal_count >= data.x.cols()) {
    throw std::invalid_argument("normal_count " + std::to_string(normal_count) + " outside [1, " +
                                std::to_string(data.x.cols()) + ")");
  }
  Dataset out = data;
  out.x = data.x.leftCols(normal_count);
  out.x_priv = data.x.rightCols(data.x.cols() - normal_count);
  return out;
}

Dataset add_white_noise(const Dataset& data, double power_dbw, std::uint64_t seed) {
  if (!std::isfinite(power_dbw)) throw std::invalid_argument("noise power must be finite");
  const double sigma = std::sqrt(noise_variance(power_dbw));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset out = data;
  // column-major fill keeps the draw order independent of Eigen internals
  for (Index j = 0; j < out.x.cols(); ++j) {
    for (Index i = 0; i < out.x.rows(); ++i) out.x(i, j) += sigma * normal(rng);
  }
  return out;
}

FoldPlan make_folds(Index n_rows, int k, std::uint64_t seed) {
  if (k < 2 || k > n_rows) {
    throw std::invalid_argument("fold count " + std::to_string(k) + " outside [2, " + std::to_string(n_rows) + "]");
  }
  std::vector<Index> order(static_cast<std::size_t>(n_rows));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.assign(order.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    plan.assignments[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos % static_cast<std::size_t>(k));
  }
  return plan;
}

std::vector<Index> FoldPlan::test_rows(int fold) const {
  std::vector<Index> rows;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) rows.push_back(static_cast<Index>(i));
  }
  return rows;
}

std::vector<Index> FoldPlan::train_rows(int fold) const {
  std::vector<Index> rows;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) rows.push_back(static_cast<Index>(i));
  }
  return rows;
}

Dataset take_rows(const Dataset& data, const std::vector<Index>& rows) {
  Dataset out;
  out.task = data.task;
  out.class_labels = data.class_labels;
  const auto n = static_cast<Index>(rows.size());
  out.x.resize(n, data.x.cols());
  out.y.resize(n, data.y.cols());
  if (data.x_priv) out.x_priv = Matrix(n, data.x_priv->cols());
  for (Index r = 0; r < n; ++r) {
    const Index src = rows[static_cast<std::size_t>(r)];
    if (src < 0 || src >= data.rows()) throw std::out_of_range("row index out of range");
    out.x.row(r) = data.x.row(src);
    out.y.row(r) = data.y.row(src);
    if (data.x_priv) out.x_priv->row(r) = data.x_priv->row(src);
  }
  return out;
}

std::vector<Index> class_indices(const Dataset& data) {
  std::vector<Index> labels(static_cast<std::size_t>(data.rows()));
  for (Index i = 0; i < data.rows(); ++i) {
    Index best = 0;
    data.y.row(i).maxCoeff(&best);
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

}  // namespace rvfl
