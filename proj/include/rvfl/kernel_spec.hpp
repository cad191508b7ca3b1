#pragma once

#include <span>
#include <string>
#include <variant>

#include "rvfl/types.hpp"

namespace rvfl {

/// exp(-‖u - v‖² / tau).
struct GaussianKernel {
  double tau = 0.025;
};

/// (⟨u, v⟩ + coef)^degree.
struct PolynomialKernel {
  int degree = 2;
  double coef = 1.0;
};

struct NoMercerKernel {};

/// Linear-plus-Mercer kernel pair K₁ + K₂ used by the kernelized learner.
struct KernelSpec {
  std::variant<NoMercerKernel, GaussianKernel, PolynomialKernel> mercer = GaussianKernel{};
  bool includes_linear = true;

  void validate() const;
  std::string describe() const;
};

/// Single-pair evaluation; rows are contiguous spans of equal length.
double kernel_eval(const KernelSpec& spec, std::span<const double> u, std::span<const double> v);

}  // namespace rvfl
