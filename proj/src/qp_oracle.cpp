#include "rvfl/qp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rvfl::oracle {

namespace {

void check_shapes(const Matrix& h, const Matrix& h_priv, const Matrix& y) {
  if (h.rows() != y.rows() || h_priv.rows() != y.rows()) {
    throw std::invalid_argument("KKT inputs disagree on the sample count");
  }
}

double rel(double num, std::initializer_list<double> scales) {
  return num / std::max(1.0, std::max(scales));
}

}  // namespace

KktSystem assemble_kkt(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                       PrimalForm form) {
  check_shapes(h, h_priv, y);
  if (!(c > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("C and gamma must be positive");

  KktSystem sys;
  sys.layout = KktLayout{h.cols(), h_priv.cols(), h.rows(), y.cols()};
  const auto& L = sys.layout;
  const Index size = L.size();
  sys.lhs = Matrix::Zero(size, size);
  sys.rhs = Vector::Zero(size);

  const Vector ones = Vector::Ones(L.samples);
  const Vector priv_linear = c * (h_priv.transpose() * ones);

  for (Index k = 0; k < L.outputs; ++k) {
    const Index wo = L.w_offset() + k * L.w_rows;
    const Index vo = L.w_corr_offset() + k * L.w_corr_rows;
    const Index lo = L.lambda_offset() + k * L.samples;

    // ∂/∂w:  w − Hᵀλ = 0
    sys.lhs.block(wo, wo, L.w_rows, L.w_rows).diagonal().setOnes();
    sys.lhs.block(wo, lo, L.w_rows, L.samples) = -h.transpose();

    // ∂/∂w̃:  γw̃ − H̃ᵀλ = −C·H̃ᵀ𝟏
    sys.lhs.block(vo, vo, L.w_corr_rows, L.w_corr_rows).diagonal().setConstant(gamma);
    sys.lhs.block(vo, lo, L.w_corr_rows, L.samples) = -h_priv.transpose();
    sys.rhs.segment(vo, L.w_corr_rows) = -priv_linear;

    // constraint, negated to keep the matrix symmetric:
    //   −Hw − H̃w̃ − λ/C = −Y
    sys.lhs.block(lo, wo, L.samples, L.w_rows) = -h;
    sys.lhs.block(lo, vo, L.samples, L.w_corr_rows) = -h_priv;
    if (form == PrimalForm::RidgeAugmented) {
      sys.lhs.block(lo, lo, L.samples, L.samples).diagonal().setConstant(-1.0 / c);
    }
    sys.rhs.segment(lo, L.samples) = -y.col(k);
  }
  return sys;
}

OracleSolution solve_primal_kkt(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                                PrimalForm form) {
  const KktSystem sys = assemble_kkt(h, h_priv, y, c, gamma, form);
  Eigen::FullPivLU<Matrix> lu(sys.lhs);
  if (!lu.isInvertible()) throw NumericalError("KKT matrix is singular");
  const Vector z = lu.solve(sys.rhs);

  const auto& L = sys.layout;
  OracleSolution out;
  out.w = Eigen::Map<const Matrix>(z.data() + L.w_offset(), L.w_rows, L.outputs);
  out.w_corr = Eigen::Map<const Matrix>(z.data() + L.w_corr_offset(), L.w_corr_rows, L.outputs);
  out.lambda = Eigen::Map<const Matrix>(z.data() + L.lambda_offset(), L.samples, L.outputs);
  return out;
}

double kkt_residual(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                    const Matrix& w, const Matrix& w_corr, const Matrix& lambda, PrimalForm form) {
  check_shapes(h, h_priv, y);
  const Matrix ht_lambda = h.transpose() * lambda;
  const double r_w = rel((w - ht_lambda).norm(), {w.norm(), ht_lambda.norm()});

  const Matrix hpt_lambda = h_priv.transpose() * lambda;
  Matrix linear = Matrix::Zero(h_priv.cols(), y.cols());
  linear.colwise() += c * (h_priv.colwise().sum().transpose());
  const double r_v =
      rel((gamma * w_corr - hpt_lambda + linear).norm(), {gamma * w_corr.norm(), hpt_lambda.norm(), linear.norm()});

  const Matrix fit = h * w;
  const Matrix corr = h_priv * w_corr;
  Matrix feas = fit + corr - y;
  double slack_norm = 0.0;
  if (form == PrimalForm::RidgeAugmented) {
    feas += lambda / c;
    slack_norm = lambda.norm() / c;
  }
  const double r_f = rel(feas.norm(), {fit.norm(), corr.norm(), slack_norm, y.norm()});
  return std::max({r_w, r_v, r_f});
}

double primal_objective(const Matrix& h, const Matrix& h_priv, const Matrix& y, double c, double gamma,
                        const Matrix& w, const Matrix& w_corr, PrimalForm form) {
  check_shapes(h, h_priv, y);
  const Matrix corr = h_priv * w_corr;
  double value = 0.5 * w.squaredNorm() + 0.5 * gamma * w_corr.squaredNorm() + c * corr.sum();
  if (form == PrimalForm::RidgeAugmented) value += 0.5 * c * (y - h * w - corr).squaredNorm();
  return value;
}

}  // namespace rvfl::oracle
