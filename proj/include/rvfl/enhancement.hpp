#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "rvfl/types.hpp"

namespace rvfl {

enum class Activation { Sigmoid, Sine, Hardlim, Tribas, Radbas };

inline constexpr std::array<Activation, 5> kAllActivations = {Activation::Sigmoid, Activation::Sine,
                                                              Activation::Hardlim, Activation::Tribas,
                                                              Activation::Radbas};

std::string_view to_string(Activation activation);
Activation parse_activation(std::string_view text);

/// G(t). Hardlim is closed at zero: G(0) = 1.
double activation_eval(Activation activation, double t);

/// Random affine map followed by an elementwise activation. Weights are
/// drawn from U[-u, u] and biases from U[0, u]; both stay fixed after
/// construction. A layer with zero nodes contributes only the direct link.
class EnhancementLayer {
 public:
  static EnhancementLayer init(Index inputs, Index nodes, Activation activation, double u, std::uint64_t seed);

  /// Zero inputs, zero nodes.
  EnhancementLayer() = default;

  /// Rebuilds a layer from persisted parameters.
  EnhancementLayer(Matrix weights, Vector biases, Activation activation, double u, std::uint64_t seed);

  /// h = [x | G(x·a + 1·bᵀ)], shape N×(n+P).
  Matrix apply(const Matrix& x) const;

  Index inputs() const { return weights_.rows(); }
  Index nodes() const { return weights_.cols(); }
  Index width() const { return inputs() + nodes(); }
  const Matrix& weights() const { return weights_; }
  const Vector& biases() const { return biases_; }
  Activation activation() const { return activation_; }
  double scale() const { return u_; }
  std::uint64_t seed() const { return seed_; }

  friend bool operator==(const EnhancementLayer& a, const EnhancementLayer& b);

 private:
  Matrix weights_;
  Vector biases_;
  Activation activation_ = Activation::Sigmoid;
  double u_ = 1.0;
  std::uint64_t seed_ = 0;
};

}  // namespace rvfl
