#pragma once

#include <utility>

#include "rvfl/kernel_spec.hpp"
#include "rvfl/solvers.hpp"
#include "rvfl/types.hpp"

namespace rvfl {

/// Entry (i, j) = K(x_a.row(i), x_b.row(j)) with K = [linear] + Mercer.
Matrix gram_matrix(const Matrix& x_a, const Matrix& x_b, const KernelSpec& spec);

/// Kernelized RVFL+. The training inputs are kept verbatim because every
/// prediction needs K(z, xᵢ) against them, so a persisted model grows as
/// O(N·(n+m)).
struct KrvflPlusModel {
  Matrix w_kernel;  // N×m
  Matrix x_train;   // N×n
  KernelSpec spec;
  KernelSpec spec_priv;
  double c = 1.0;
  double gamma = 5000.0;

  Matrix predict(const Matrix& z) const;
};

inline constexpr double kDefaultKernelGamma = 5000.0;

/// w_kernel = (Ω + Ω̃/γ + I/C)⁻¹(Y + (C/γ)·Ω̃·𝟏).
std::pair<KrvflPlusModel, TrainDiagnostics> train_krvfl_plus(const Matrix& x, const Matrix& x_priv, const Matrix& y,
                                                             const KernelSpec& spec, const KernelSpec& spec_priv,
                                                             double c, double gamma);

Matrix predict_krvfl_plus(const KrvflPlusModel& model, const Matrix& z);

}  // namespace rvfl
