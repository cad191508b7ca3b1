#include "rvfl/kernel_machine.hpp"

#include <cmath>
#include <string>

#include "rvfl/kernels.hpp"

namespace rvfl {

Matrix gram_matrix(const Matrix& x_a, const Matrix& x_b, const KernelSpec& spec) {
  spec.validate();
  return kernels::gram_omp(x_a, x_b, spec);
}

std::pair<KrvflPlusModel, TrainDiagnostics> train_krvfl_plus(const Matrix& x, const Matrix& x_priv, const Matrix& y,
                                                             const KernelSpec& spec, const KernelSpec& spec_priv,
                                                             double c, double gamma) {
  if (x.rows() != y.rows() || x_priv.rows() != y.rows()) {
    throw std::invalid_argument("KRVFL+ inputs disagree on the sample count");
  }
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("C must be positive and finite");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive and finite");
  if (!x.allFinite() || !x_priv.allFinite() || !y.allFinite()) {
    throw std::invalid_argument("KRVFL+ inputs contain non-finite entries");
  }
  spec.validate();
  spec_priv.validate();

  const Matrix omega = kernels::gram_symmetric_omp(x, spec);
  const Matrix omega_priv = kernels::gram_symmetric_omp(x_priv, spec_priv);

  Matrix system = omega;
  system.noalias() += omega_priv / gamma;
  system.diagonal().array() += 1.0 / c;

  Matrix rhs = y;
  rhs.colwise() += (c / gamma) * omega_priv.rowwise().sum();

  Eigen::LLT<Matrix> llt(system);
  Matrix w_kernel;
  double cond = INFINITY;
  if (llt.info() == Eigen::Success) {
    w_kernel = llt.solve(rhs);
    cond = 1.0 / llt.rcond();
  }
  if (w_kernel.size() == 0 || !w_kernel.allFinite()) {
    Eigen::PartialPivLU<Matrix> lu(system);
    w_kernel = lu.solve(rhs);
    cond = 1.0 / lu.rcond();
  }
  if (!w_kernel.allFinite()) throw NumericalError("KRVFL+ system is singular to working precision");

  TrainDiagnostics diag;
  diag.condition_estimate = cond;
  diag.lambda = w_kernel;
  diag.train_loss = (omega * w_kernel - y).squaredNorm() / static_cast<double>(std::max<Index>(1, y.size()));
  // residual of the dual system itself; the primal variables live in the RKHS
  diag.kkt_residual = (system * w_kernel - rhs).norm() / std::max(1.0, rhs.norm());

  KrvflPlusModel model{std::move(w_kernel), x, spec, spec_priv, c, gamma};
  return {std::move(model), std::move(diag)};
}

Matrix KrvflPlusModel::predict(const Matrix& z) const { return predict_krvfl_plus(*this, z); }

Matrix predict_krvfl_plus(const KrvflPlusModel& model, const Matrix& z) {
  if (z.cols() != model.x_train.cols()) {
    throw std::invalid_argument("KRVFL+ model expects " + std::to_string(model.x_train.cols()) + " features, got " +
                                std::to_string(z.cols()));
  }
  if (z.rows() == 0) return Matrix(0, model.w_kernel.cols());
  return gram_matrix(z, model.x_train, model.spec) * model.w_kernel;
}

}  // namespace rvfl
