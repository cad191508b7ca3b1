#include "rvfl/synthetic.hpp"

#include <random>
#include <string>

namespace rvfl::synthetic {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

}  // namespace

LupiTask::LupiTask(const LupiConfig& config, std::uint64_t seed) : config_(config) {
  if (config.observed < 1 || config.hidden < 1) throw std::invalid_argument("LUPI task needs observed and hidden channels");
  if (config.classes < 2) throw std::invalid_argument("LUPI task needs at least two classes");
  std::mt19937_64 rng(seed);
  class_map_ = gaussian_matrix(config.observed + config.hidden, config.classes, rng);
}

Dataset LupiTask::sample(Index rows, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const Index k = config_.observed + config_.hidden;
  const Matrix signal = gaussian_matrix(rows, k, rng);
  Matrix noise = gaussian_matrix(rows, k, rng);
  noise.leftCols(config_.observed) *= config_.observed_noise;
  noise.rightCols(config_.hidden) *= config_.hidden_noise;

  Dataset data;
  data.task = TaskKind::Multiclass;
  data.x = signal + noise;
  data.x_priv = signal.rightCols(config_.hidden);
  data.y = Matrix::Zero(rows, config_.classes);
  const Matrix scores = signal * class_map_;
  for (Index i = 0; i < rows; ++i) {
    Index c = 0;
    scores.row(i).maxCoeff(&c);
    data.y(i, c) = 1.0;
  }
  for (Index c = 0; c < config_.classes; ++c) data.class_labels.push_back("c" + std::to_string(c));
  return data;
}

Dataset binary_blobs(Index rows, Index dims, double separation, std::uint64_t seed) {
  if (rows < 1 || dims < 1) throw std::invalid_argument("binary_blobs needs positive rows and dims");
  std::mt19937_64 rng(seed);
  Vector direction = gaussian_matrix(dims, 1, rng).col(0);
  direction.normalize();
  std::bernoulli_distribution coin(0.5);

  Dataset data;
  data.task = TaskKind::Binary;
  data.class_labels = {"neg", "pos"};
  data.x = gaussian_matrix(rows, dims, rng);
  data.y = Matrix::Zero(rows, 2);
  for (Index i = 0; i < rows; ++i) {
    const bool positive = coin(rng);
    data.x.row(i) += (positive ? 0.5 : -0.5) * separation * direction.transpose();
    data.y(i, positive ? 1 : 0) = 1.0;
  }
  return data;
}

}  // namespace rvfl::synthetic
