#pragma once

// Reference solver for the RVFL+ primal. It assembles the full saddle-point
// system in (vec w, vec w̃, vec λ) and factors it with a generic pivoted LU,
// never using the closed-form elimination. Tests compare the closed form
// against it.

#include "rvfl/types.hpp"

namespace rvfl::oracle {

/// `RidgeAugmented` is the primal whose optimum the closed form returns:
///   min ½‖w‖² + (γ/2)‖w̃‖² + C·Σᵢ h̃ᵢw̃ 𝟏 + (C/2)‖ξ‖²  s.t.  Hw + H̃w̃ + ξ = Y
/// with the slack ξ eliminated as λ/C. `Exact` drops the ξ term.
enum class PrimalForm { RidgeAugmented, Exact };

struct KktLayout {
  Index w_rows = 0;
  Index w_corr_rows = 0;
  Index samples = 0;
  Index outputs = 0;

  Index w_offset() const { return 0; }
  Index w_corr_offset() const { return w_rows * outputs; }
  Index lambda_offset() const { return (w_rows + w_corr_rows) * outputs; }
  Index size() const { return (w_rows + w_corr_rows + samples) * outputs; }
};

struct KktSystem {
  Matrix lhs;
  Vector rhs;
  KktLayout layout;
};

struct OracleSolution {
  Matrix w;
  Matrix w_corr;
  Matrix lambda;
};

KktSystem assemble_kkt(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                       PrimalForm form = PrimalForm::RidgeAugmented);

OracleSolution solve_primal_kkt(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                                PrimalForm form = PrimalForm::RidgeAugmented);

/// Largest of the three scale-relative residuals: w-stationarity,
/// w̃-stationarity and primal feasibility.
double kkt_residual(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                    const Matrix& w, const Matrix& w_corr, const Matrix& lambda,
                    PrimalForm form = PrimalForm::RidgeAugmented);

/// Primal objective. For `RidgeAugmented` the slack is ξ = Y − Hw − H̃w̃, so
/// every (w, w̃) is feasible.
double primal_objective(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                        const Matrix& w, const Matrix& w_corr, PrimalForm form = PrimalForm::RidgeAugmented);

}  // namespace rvfl::oracle
