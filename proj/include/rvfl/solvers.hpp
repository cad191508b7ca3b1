#pragma once

#include <utility>

#include "rvfl/enhancement.hpp"
#include "rvfl/types.hpp"

namespace rvfl {

/// Which right-hand side the RVFL+ dual system uses. `Consistent` is
/// Y + (C/γ)·H̃H̃ᵀ·𝟏, the form obtained by eliminating w and w̃ from the
/// stationarity conditions. `FlippedSign` subtracts the privileged term
/// instead; it exists only so the verifier can show that it disagrees with
/// the KKT oracle.
enum class RhsSign { Consistent, FlippedSign };

struct PlusSolution {
  Matrix w;       // (n+P)×m
  Matrix w_corr;  // (d+P̃)×m
  Matrix lambda;  // N×m
  double condition_estimate = 1.0;
};

/// Minimum-norm least squares w = H†Y.
Matrix solve_pinv(const Matrix& h, const Matrix& y);

/// w = (HᵀH + I/C)⁻¹HᵀY. Solved in whichever of the primal or dual forms is
/// smaller; the two are algebraically identical.
Matrix solve_ridge(const Matrix& h, const Matrix& y, double c);

/// λ = (HHᵀ + H̃H̃ᵀ/γ + I/C)⁻¹R, w = Hᵀλ, w̃ = (H̃ᵀλ − C·H̃ᵀ𝟏)/γ.
PlusSolution solve_rvfl_plus(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                             RhsSign sign = RhsSign::Consistent);

struct RvflModel {
  enum class Variant { Pinv, Ridge };

  Variant variant = Variant::Ridge;
  double c = 0.0;  // unused for Pinv
  EnhancementLayer layer;
  Matrix weights;

  Matrix predict(const Matrix& x) const { return layer.apply(x) * weights; }
};

/// The privileged layer and correcting weights are kept for inspection and
/// persistence; prediction needs only `layer` and `weights`.
struct RvflPlusModel {
  double c = 1.0;
  double gamma = 1.0;
  EnhancementLayer layer;
  EnhancementLayer priv_layer;
  Matrix weights;
  Matrix correction_weights;

  Matrix predict(const Matrix& x) const { return layer.apply(x) * weights; }
};

struct TrainDiagnostics {
  double kkt_residual = 0.0;
  double train_loss = 0.0;
  double condition_estimate = 1.0;
  Matrix lambda;

  static constexpr double kConditionLimit = 1e14;
  bool ill_conditioned() const { return !(condition_estimate <= kConditionLimit); }
};

RvflModel train_rvfl_pinv(const EnhancementLayer& layer, const Matrix& x, const Matrix& y);
RvflModel train_rvfl_ridge(const EnhancementLayer& layer, const Matrix& x, const Matrix& y, double c);

std::pair<RvflPlusModel, TrainDiagnostics> train_rvfl_plus(const EnhancementLayer& layer,
                                                           const EnhancementLayer& priv_layer, const Matrix& x,
                                                           const Matrix& x_priv, const Matrix& y, double c,
                                                           double gamma);

/// Mean squared training residual ‖Hw − Y‖²/(N·m).
double mean_squared_residual(const Matrix& h, const Matrix& w, const Matrix& y);

}  // namespace rvfl
