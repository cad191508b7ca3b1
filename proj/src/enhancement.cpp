#include "rvfl/enhancement.hpp"

#include <cmath>
#include <random>
#include <string>

#include "rvfl/kernels.hpp"

namespace rvfl {

std::string_view to_string(Activation activation) {
  switch (activation) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Sine: return "sine";
    case Activation::Hardlim: return "hardlim";
    case Activation::Tribas: return "tribas";
    case Activation::Radbas: return "radbas";
  }
  return "unknown";
}

Activation parse_activation(std::string_view text) {
  for (const auto a : kAllActivations) {
    if (to_string(a) == text) return a;
  }
  throw std::invalid_argument("unknown activation '" + std::string(text) + "'");
}

double activation_eval(Activation activation, double t) {
  switch (activation) {
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-t));
    case Activation::Sine: return std::sin(t);
    case Activation::Hardlim: return t >= 0.0 ? 1.0 : 0.0;
    case Activation::Tribas: return std::max(0.0, 1.0 - std::abs(t));
    case Activation::Radbas: return std::exp(-t * t);
  }
  return 0.0;
}

EnhancementLayer EnhancementLayer::init(Index inputs, Index nodes, Activation activation, double u,
                                        std::uint64_t seed) {
  if (inputs < 1) throw std::invalid_argument("enhancement layer needs at least one input");
  if (nodes < 0) throw std::invalid_argument("enhancement node count must be non-negative");
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("initialization scale u must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(-u, u);
  std::uniform_real_distribution<double> bias(0.0, u);
  Matrix a(inputs, nodes);
  for (Index j = 0; j < nodes; ++j) {
    for (Index i = 0; i < inputs; ++i) a(i, j) = weight(rng);
  }
  Vector b(nodes);
  for (Index j = 0; j < nodes; ++j) b(j) = bias(rng);
  return EnhancementLayer(std::move(a), std::move(b), activation, u, seed);
}

EnhancementLayer::EnhancementLayer(Matrix weights, Vector biases, Activation activation, double u,
                                   std::uint64_t seed)
    : weights_(std::move(weights)), biases_(std::move(biases)), activation_(activation), u_(u), seed_(seed) {
  if (weights_.cols() != biases_.size()) throw std::invalid_argument("weight/bias node counts differ");
  if (!(u_ > 0.0)) throw std::invalid_argument("initialization scale u must be positive");
}

Matrix EnhancementLayer::apply(const Matrix& x) const {
  if (x.cols() != inputs()) {
    throw std::invalid_argument("enhancement layer expects " + std::to_string(inputs()) + " features, got " +
                                std::to_string(x.cols()));
  }
  return kernels::enhance_omp(x, weights_, biases_, activation_);
}

bool operator==(const EnhancementLayer& a, const EnhancementLayer& b) {
  return a.activation_ == b.activation_ && a.u_ == b.u_ && a.seed_ == b.seed_ &&
         a.weights_.rows() == b.weights_.rows() && a.weights_.cols() == b.weights_.cols() &&
         a.weights_ == b.weights_ && a.biases_ == b.biases_;
}

}  // namespace rvfl
