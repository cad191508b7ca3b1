#include "rvfl/solvers.hpp"

#include <cmath>
#include <string>

#include "rvfl/qp_oracle.hpp"

namespace rvfl {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " contains non-finite entries");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void require_rows(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(what) + ": row counts " + std::to_string(a.rows()) + " and " +
                                std::to_string(b.rows()) + " differ");
  }
}

struct SpdSolve {
  Matrix solution;
  double condition_estimate;
};

// Cholesky first; a pivoted LU takes over if the factorization breaks down.
SpdSolve solve_spd(const Matrix& a, const Matrix& rhs) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() == Eigen::Success) {
    Matrix x = llt.solve(rhs);
    const double rcond = llt.rcond();
    if (x.allFinite()) return {std::move(x), rcond > 0.0 ? 1.0 / rcond : INFINITY};
  }
  Eigen::PartialPivLU<Matrix> lu(a);
  Matrix x = lu.solve(rhs);
  if (!x.allFinite()) throw NumericalError("linear system is singular to working precision");
  const double rcond = lu.rcond();
  return {std::move(x), rcond > 0.0 ? 1.0 / rcond : INFINITY};
}

}  // namespace

Matrix solve_pinv(const Matrix& h, const Matrix& y) {
  require_rows(h, y, "pseudo-inverse solve");
  require_finite(h, "H");
  require_finite(y, "Y");
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(h);
  return cod.solve(y);
}

Matrix solve_ridge(const Matrix& h, const Matrix& y, double c) {
  require_rows(h, y, "ridge solve");
  require_positive(c, "C");
  require_finite(h, "H");
  require_finite(y, "Y");
  const double shift = 1.0 / c;
  if (h.cols() <= h.rows()) {
    Matrix gram = h.transpose() * h;
    gram.diagonal().array() += shift;
    return solve_spd(gram, h.transpose() * y).solution;
  }
  Matrix gram = h * h.transpose();
  gram.diagonal().array() += shift;
  return h.transpose() * solve_spd(gram, y).solution;
}

PlusSolution solve_rvfl_plus(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                             RhsSign sign) {
  require_rows(h, y, "RVFL+ solve");
  require_rows(h_priv, y, "RVFL+ solve (privileged)");
  require_positive(c, "C");
  require_positive(gamma, "gamma");
  require_finite(h, "H");
  require_finite(h_priv, "privileged H");
  require_finite(y, "Y");

  const Matrix priv_gram = h_priv * h_priv.transpose();

  Matrix system = h * h.transpose();
  system.noalias() += priv_gram / gamma;
  system.diagonal().array() += 1.0 / c;

  // H̃H̃ᵀ𝟏: every column of the all-ones N×m matrix is the same, so the
  // product is the row sums of the privileged Gram broadcast across outputs
  const Vector priv_row_sums = priv_gram.rowwise().sum();
  const double sgn = sign == RhsSign::Consistent ? 1.0 : -1.0;
  Matrix rhs = y;
  rhs.colwise() += sgn * (c / gamma) * priv_row_sums;

  auto [lambda, cond] = solve_spd(system, rhs);

  PlusSolution out;
  out.w = h.transpose() * lambda;
  const Vector priv_col_sums = h_priv.colwise().sum().transpose();  // H̃ᵀ𝟏 column
  out.w_corr = h_priv.transpose() * lambda;
  out.w_corr.colwise() -= c * priv_col_sums;
  out.w_corr /= gamma;
  out.lambda = std::move(lambda);
  out.condition_estimate = cond;
  if (!out.w.allFinite() || !out.w_corr.allFinite()) throw NumericalError("RVFL+ solution is not finite");
  return out;
}

double mean_squared_residual(const Matrix& h, const Matrix& w, const Matrix& y) {
  if (y.size() == 0) return 0.0;
  return (h * w - y).squaredNorm() / static_cast<double>(y.size());
}

RvflModel train_rvfl_pinv(const EnhancementLayer& layer, const Matrix& x, const Matrix& y) {
  const Matrix h = layer.apply(x);
  return RvflModel{RvflModel::Variant::Pinv, 0.0, layer, solve_pinv(h, y)};
}

RvflModel train_rvfl_ridge(const EnhancementLayer& layer, const Matrix& x, const Matrix& y, double c) {
  const Matrix h = layer.apply(x);
  return RvflModel{RvflModel::Variant::Ridge, c, layer, solve_ridge(h, y, c)};
}

std::pair<RvflPlusModel, TrainDiagnostics> train_rvfl_plus(const EnhancementLayer& layer,
                                                           const EnhancementLayer& priv_layer, const Matrix& x,
                                                           const Matrix& x_priv, const Matrix& y, double c,
                                                           double gamma) {
  const Matrix h = layer.apply(x);
  const Matrix h_priv = priv_layer.apply(x_priv);
  PlusSolution sol = solve_rvfl_plus(h, h_priv, y, c, gamma);

  TrainDiagnostics diag;
  diag.kkt_residual = oracle::kkt_residual(h, h_priv, y, c, gamma, sol.w, sol.w_corr, sol.lambda);
  diag.train_loss = mean_squared_residual(h, sol.w, y);
  diag.condition_estimate = sol.condition_estimate;
  diag.lambda = std::move(sol.lambda);

  RvflPlusModel model{c, gamma, layer, priv_layer, std::move(sol.w), std::move(sol.w_corr)};
  return {std::move(model), std::move(diag)};
}

}  // namespace rvfl
