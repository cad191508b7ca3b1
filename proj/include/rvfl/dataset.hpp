#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rvfl/types.hpp"

namespace rvfl {

/// Training or evaluation data. `y` is one-hot for classification tasks and
/// holds real targets for regression. `x_priv` is only ever consumed by
/// training code; prediction paths accept the normal features alone.
struct Dataset {
  Matrix x;
  std::optional<Matrix> x_priv;
  Matrix y;
  TaskKind task = TaskKind::Regression;
  std::vector<std::string> class_labels;

  Index rows() const { return x.rows(); }
  Index normal_features() const { return x.cols(); }
  Index privileged_features() const { return x_priv ? x_priv->cols() : 0; }
  Index outputs() const { return y.cols(); }

  /// Throws DataError if any structural invariant is violated.
  void validate() const;
};

struct CsvOptions {
  bool has_header = false;
  /// Column name (requires a header) or zero-based index. Empty selects the
  /// last column.
  std::string label_column;
  char delimiter = ',';
};

Dataset parse_csv(std::istream& in, const CsvOptions& options, TaskKind task);
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options, TaskKind task);

/// Writes [x | x_priv | label] with a header row. Classification labels are
/// written as their original strings.
void write_csv(std::ostream& out, const Dataset& data);

/// Per-column absolute-sum scaling, kept separately so it can be fit on a
/// training split and applied to held-out rows.
struct L1Scaling {
  Vector normal;
  std::optional<Vector> privileged;
};

L1Scaling fit_l1(const Dataset& data);
Dataset apply_l1(const Dataset& data, const L1Scaling& scaling);
/// Divides each column by its stored absolute sum; zero sums leave the column unchanged.
Matrix apply_l1(const Matrix& x, const Vector& column_sums);
Dataset normalize_l1(const Dataset& data);

Dataset split_privileged(const Dataset& data, Index normal_count);

/// ceil(attributes / 2): odd counts give the extra column to the normal side.
inline Index default_normal_count(Index attributes) { return (attributes + 1) / 2; }

/// Adds i.i.d. N(0, 10^(power_dbw/10)) noise to every entry of `x`.
Dataset add_white_noise(const Dataset& data, double power_dbw, std::uint64_t seed);

inline double noise_variance(double power_dbw) { return std::pow(10.0, power_dbw / 10.0); }

struct FoldPlan {
  int k = 0;
  std::vector<int> assignments;
  std::uint64_t seed = 0;

  std::vector<Index> test_rows(int fold) const;
  std::vector<Index> train_rows(int fold) const;
};

FoldPlan make_folds(Index n_rows, int k, std::uint64_t seed);

Dataset take_rows(const Dataset& data, const std::vector<Index>& rows);

/// Class index per row (argmax of one-hot y).
std::vector<Index> class_indices(const Dataset& data);

}  // namespace rvfl
