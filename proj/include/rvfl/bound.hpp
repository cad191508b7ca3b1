#pragma once

#include <vector>

#include "rvfl/types.hpp"

namespace rvfl::bound {

/// Inputs of the Rademacher generalization bound.
///   lipschitz       K, Lipschitz constant of the loss (1 for absolute loss)
///   feature_norm    Z, with ‖h(x)‖₂ ≤ Z for every enhanced vector
///   weight_norm     B, with ‖w‖₂ ≤ B
///   samples         M
///   delta           failure probability in (0, 1)
///   empirical_loss  training loss of the evaluated model
struct BoundInputs {
  double lipschitz = 1.0;
  double feature_norm = 1.0;
  double weight_norm = 1.0;
  long long samples = 1;
  double delta = 0.05;
  double empirical_loss = 0.0;

  void validate() const;
};

/// The three additive pieces of the bound, reported separately.
struct BoundTerms {
  double empirical = 0.0;
  double complexity = 0.0;  // 2·K·Z·B·√(1/M)
  double confidence = 0.0;  // K·Z·B·√(ln(1/δ)/(2M)); takes c = KZB as the loss bound
  double total() const { return empirical + complexity + confidence; }
};

/// Z·B·√(1/M).
double rademacher_term(double feature_norm, double weight_norm, long long samples);

BoundTerms bound_terms(const BoundInputs& inputs);
double generalization_bound(const BoundInputs& inputs);

struct MeasuredNorms {
  double feature_norm = 0.0;               // max row 2-norm of H
  double weight_norm = 0.0;                // Frobenius norm of w (2-norm when m = 1)
  std::vector<double> column_weight_norms;  // per output column
};

MeasuredNorms measure_zb(const Matrix& weights, const Matrix& h);

/// One bound per output column (using that column's weight norm) followed
/// by the maximum over columns. The single-output case is the textbook one;
/// the per-column form is an extension for m > 1.
struct ColumnBounds {
  std::vector<double> per_column;
  double max = 0.0;
};

ColumnBounds column_bounds(const MeasuredNorms& norms, double lipschitz, long long samples, double delta,
                           const std::vector<double>& empirical_losses);

}  // namespace rvfl::bound
