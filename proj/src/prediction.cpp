#include "rvfl/prediction.hpp"

#include <cmath>
#include <string>

namespace rvfl {

std::vector<int> decide_binary(const Matrix& raw) {
  if (raw.cols() != 1) throw std::invalid_argument("sign rule needs exactly one output column");
  std::vector<int> labels(static_cast<std::size_t>(raw.rows()));
  for (Index i = 0; i < raw.rows(); ++i) labels[static_cast<std::size_t>(i)] = raw(i, 0) >= 0.0 ? 1 : -1;
  return labels;
}

std::vector<Index> decide_multiclass(const Matrix& raw) {
  if (raw.cols() < 2) throw std::invalid_argument("argmax rule needs at least two output columns");
  std::vector<Index> labels(static_cast<std::size_t>(raw.rows()));
  for (Index i = 0; i < raw.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < raw.cols(); ++j) {
      if (raw(i, j) > raw(i, best)) best = j;
    }
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

Prediction make_prediction(Matrix raw, TaskKind task) {
  Prediction pred;
  pred.task = task;
  const auto rows = static_cast<std::size_t>(raw.rows());
  pred.decided.resize(rows);
  switch (task) {
    case TaskKind::Binary:
      if (raw.cols() == 1) {
        const auto labels = decide_binary(raw);
        for (std::size_t i = 0; i < rows; ++i) pred.decided[i] = labels[i];
      } else {
        const auto labels = decide_multiclass(raw);
        for (std::size_t i = 0; i < rows; ++i) pred.decided[i] = labels[i] == 1 ? 1.0 : -1.0;
      }
      break;
    case TaskKind::Multiclass: {
      const auto labels = decide_multiclass(raw);
      for (std::size_t i = 0; i < rows; ++i) pred.decided[i] = static_cast<double>(labels[i]);
      break;
    }
    case TaskKind::Regression:
      if (raw.cols() != 1) throw std::invalid_argument("regression prediction needs one output column");
      for (std::size_t i = 0; i < rows; ++i) pred.decided[i] = raw(static_cast<Index>(i), 0);
      break;
  }
  pred.raw = std::move(raw);
  return pred;
}

Matrix signed_targets(const Dataset& data) {
  if (data.task != TaskKind::Binary) throw std::invalid_argument("signed targets are only defined for binary tasks");
  if (data.y.cols() == 1) return data.y;
  if (data.y.cols() != 2) throw std::invalid_argument("binary one-hot targets need two columns");
  Matrix out(data.rows(), 1);
  for (Index i = 0; i < data.rows(); ++i) out(i, 0) = data.y(i, 1) > data.y(i, 0) ? 1.0 : -1.0;
  return out;
}

Metrics metrics(const Prediction& pred, const Dataset& truth) {
  if (static_cast<Index>(pred.decided.size()) != truth.rows()) {
    throw std::invalid_argument("prediction has " + std::to_string(pred.decided.size()) + " rows, truth has " +
                                std::to_string(truth.rows()));
  }
  if (pred.task != truth.task) throw std::invalid_argument("prediction and truth task kinds differ");
  Metrics out;
  const auto rows = truth.rows();
  if (truth.task == TaskKind::Regression) {
    if (rows == 0) return out;
    double sse = 0.0;
    for (Index i = 0; i < rows; ++i) {
      const double d = pred.decided[static_cast<std::size_t>(i)] - truth.y(i, 0);
      sse += d * d;
    }
    out.rmse = std::sqrt(sse / static_cast<double>(rows));
    return out;
  }
  if (rows == 0) return out;
  Index correct = 0;
  if (truth.task == TaskKind::Binary) {
    const Matrix signs = signed_targets(truth);
    for (Index i = 0; i < rows; ++i) correct += pred.decided[static_cast<std::size_t>(i)] == signs(i, 0) ? 1 : 0;
  } else {
    const auto labels = class_indices(truth);
    for (Index i = 0; i < rows; ++i) {
      correct += pred.decided[static_cast<std::size_t>(i)] == static_cast<double>(labels[i]) ? 1 : 0;
    }
  }
  out.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(rows);
  return out;
}

}  // namespace rvfl
