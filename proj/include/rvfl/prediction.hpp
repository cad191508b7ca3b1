#pragma once

#include <optional>
#include <vector>

#include "rvfl/dataset.hpp"
#include "rvfl/types.hpp"

namespace rvfl {

/// Decided values are ±1 for Binary, a class index in [0, m) for Multiclass
/// and the raw output for Regression.
struct Prediction {
  Matrix raw;
  std::vector<double> decided;
  TaskKind task = TaskKind::Regression;
};

/// sign(raw); zero maps to +1.
std::vector<int> decide_binary(const Matrix& raw);

/// Row-wise argmax; ties go to the lowest index.
std::vector<Index> decide_multiclass(const Matrix& raw);

/// Binary with a single output column uses the sign rule; binary with two
/// columns goes through argmax and reports class 1 as +1.
Prediction make_prediction(Matrix raw, TaskKind task);

/// ±1 targets for the binary sign rule: class 1 → +1, class 0 → −1.
Matrix signed_targets(const Dataset& data);

struct Metrics {
  std::optional<double> accuracy;  // percent
  std::optional<double> rmse;

  double value() const { return accuracy ? *accuracy : rmse.value_or(0.0); }
};

Metrics metrics(const Prediction& pred, const Dataset& truth);

}  // namespace rvfl
