#include "rvfl/bound.hpp"

#include <algorithm>
#include <cmath>

namespace rvfl::bound {

void BoundInputs::validate() const {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("Lipschitz constant K must be positive");
  if (!(feature_norm >= 0.0) || !(weight_norm >= 0.0)) throw std::invalid_argument("Z and B must be non-negative");
  if (samples < 1) throw std::invalid_argument("sample count M must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(empirical_loss >= 0.0)) throw std::invalid_argument("empirical loss must be non-negative");
}

double rademacher_term(double feature_norm, double weight_norm, long long samples) {
  if (samples < 1) throw std::invalid_argument("sample count M must be >= 1");
  if (!(feature_norm >= 0.0) || !(weight_norm >= 0.0)) throw std::invalid_argument("Z and B must be non-negative");
  return feature_norm * weight_norm * std::sqrt(1.0 / static_cast<double>(samples));
}

BoundTerms bound_terms(const BoundInputs& in) {
  in.validate();
  const double m = static_cast<double>(in.samples);
  const double kzb = in.lipschitz * in.feature_norm * in.weight_norm;
  BoundTerms t;
  t.empirical = in.empirical_loss;
  t.complexity = 2.0 * in.lipschitz * rademacher_term(in.feature_norm, in.weight_norm, in.samples);
  t.confidence = kzb * std::sqrt(std::log(1.0 / in.delta) / (2.0 * m));
  return t;
}

double generalization_bound(const BoundInputs& inputs) { return bound_terms(inputs).total(); }

MeasuredNorms measure_zb(const Matrix& weights, const Matrix& h) {
  if (h.cols() != weights.rows()) throw std::invalid_argument("weights do not match the enhanced output width");
  MeasuredNorms out;
  out.feature_norm = h.rows() > 0 ? h.rowwise().norm().maxCoeff() : 0.0;
  out.weight_norm = weights.norm();
  for (Index j = 0; j < weights.cols(); ++j) out.column_weight_norms.push_back(weights.col(j).norm());
  return out;
}

ColumnBounds column_bounds(const MeasuredNorms& norms, double lipschitz, long long samples, double delta,
                           const std::vector<double>& empirical_losses) {
  if (empirical_losses.size() != norms.column_weight_norms.size()) {
    throw std::invalid_argument("need one empirical loss per output column");
  }
  ColumnBounds out;
  for (std::size_t j = 0; j < empirical_losses.size(); ++j) {
    const BoundInputs in{lipschitz, norms.feature_norm, norms.column_weight_norms[j], samples, delta,
                         empirical_losses[j]};
    out.per_column.push_back(generalization_bound(in));
  }
  out.max = out.per_column.empty() ? 0.0 : *std::max_element(out.per_column.begin(), out.per_column.end());
  return out;
}

}  // namespace rvfl::bound
