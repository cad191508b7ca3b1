#include <gtest/gtest.h>

#include <random>

#include "rvfl/qp_oracle.hpp"
#include "rvfl/solvers.hpp"
#include "test_util.hpp"

using namespace rvfl;

namespace {

// Plain gradient descent on ½‖w‖² + (C/2)‖Y − Hw‖², step 1/L.
Matrix ridge_by_gradient_descent(const Matrix& h, const Matrix& y, double c) {
  const Matrix hth = h.transpose() * h;
  const double lipschitz = 1.0 + c * Eigen::SelfAdjointEigenSolver<Matrix>(hth).eigenvalues().maxCoeff();
  Matrix w = Matrix::Zero(h.cols(), y.cols());
  for (int it = 0; it < 200000; ++it) {
    const Matrix grad = w - c * h.transpose() * (y - h * w);
    w -= grad / lipschitz;
    if (grad.norm() < 1e-13) break;
  }
  return w;
}

Matrix dual_ridge(const Matrix& h, const Matrix& y, double c) {
  Matrix k = h * h.transpose();
  k.diagonal().array() += 1.0 / c;
  return h.transpose() * k.fullPivLu().solve(y);
}

}  // namespace

TEST(Pinv, IdentityDesign) {
  const Matrix y = testutil::random_matrix(4, 2, 1);
  EXPECT_TRUE(testutil::near(solve_pinv(Matrix::Identity(4, 4), y), y, 1e-14));
}

TEST(Pinv, OrthonormalColumns) {
  const Matrix q = Eigen::HouseholderQR<Matrix>(testutil::random_matrix(7, 3, 2)).householderQ() *
                   Matrix::Identity(7, 3);
  const Matrix y = testutil::random_matrix(7, 2, 3);
  EXPECT_TRUE(testutil::near(solve_pinv(q, y), q.transpose() * y, 1e-12));
}

TEST(Pinv, NormalEquationsOnFullRank) {
  const Matrix h = testutil::random_matrix(6, 4, 4);
  const Matrix y = testutil::random_matrix(6, 2, 5);
  const Matrix normal = (h.transpose() * h).ldlt().solve(h.transpose() * y);
  const Matrix w = solve_pinv(h, y);
  EXPECT_TRUE(testutil::near(w, normal, 1e-10));
  const Matrix residual = h * w - y;
  EXPECT_LE((h.transpose() * residual).norm(), 1e-8 * std::max(1.0, y.norm()));
}

TEST(Pinv, MinimumNormOnWideDesign) {
  const Matrix h = testutil::random_matrix(3, 6, 6);
  const Matrix y = testutil::random_matrix(3, 1, 7);
  const Matrix w = solve_pinv(h, y);
  EXPECT_TRUE(testutil::near(h * w, y, 1e-12));
  // minimum norm: w lies in the row space of H
  const Matrix in_row_space = h.transpose() * (h * h.transpose()).ldlt().solve(y);
  EXPECT_TRUE(testutil::near(w, in_row_space, 1e-10));
}

TEST(Ridge, IdentityHalves) {
  const Matrix y = testutil::random_matrix(5, 3, 8);
  EXPECT_TRUE(testutil::near(solve_ridge(Matrix::Identity(5, 5), y, 1.0), y / 2.0, 1e-15));
}

TEST(Ridge, LargeCApproachesPinv) {
  const Matrix h = testutil::random_matrix(20, 5, 9);
  const Matrix y = testutil::random_matrix(20, 2, 10);
  EXPECT_TRUE(testutil::near(solve_ridge(h, y, 1e12), solve_pinv(h, y), 1e-6));
}

TEST(Ridge, GradientDescentOracle) {
  const Matrix h = testutil::random_matrix(8, 3, 11);
  const Matrix y = testutil::random_matrix(8, 1, 12);
  EXPECT_TRUE(testutil::near(solve_ridge(h, y, 10.0), ridge_by_gradient_descent(h, y, 10.0), 1e-10));
}

TEST(Ridge, PrimalAndDualAgree) {
  for (const auto& [rows, cols] : {std::pair<Index, Index>{30, 6}, std::pair<Index, Index>{6, 30}}) {
    const Matrix h = testutil::random_matrix(rows, cols, 13);
    const Matrix y = testutil::random_matrix(rows, 2, 14);
    EXPECT_TRUE(testutil::near(solve_ridge(h, y, 0.7), dual_ridge(h, y, 0.7), 1e-12));
  }
}

TEST(Ridge, NormShrinksWithC) {
  const Matrix h = testutil::random_matrix(15, 6, 15);
  const Matrix y = testutil::random_matrix(15, 2, 16);
  double prev = INFINITY;
  for (const double c : {1e3, 1e1, 1.0, 1e-1, 1e-3}) {
    const double norm = solve_ridge(h, y, c).norm();
    EXPECT_LE(norm, prev);
    prev = norm;
  }
}

TEST(Ridge, Errors) {
  EXPECT_THROW(solve_ridge(Matrix::Identity(2, 2), Matrix::Zero(2, 1), 0.0), std::invalid_argument);
  EXPECT_THROW(solve_ridge(Matrix::Identity(2, 2), Matrix::Zero(3, 1), 1.0), std::invalid_argument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = NAN;
  EXPECT_THROW(solve_pinv(bad, Matrix::Zero(2, 1)), std::invalid_argument);
}

TEST(RvflPlus, ZeroPrivilegedIsDualRidge) {
  const Matrix h = testutil::random_matrix(9, 5, 17);
  const Matrix y = testutil::random_matrix(9, 2, 18);
  const PlusSolution s = solve_rvfl_plus(h, Matrix::Zero(9, 4), y, 2.5, 3.0);
  EXPECT_TRUE(testutil::near(s.w, dual_ridge(h, y, 2.5), 1e-8));
  EXPECT_TRUE(s.w_corr.isZero(0.0));
}

TEST(RvflPlus, LargeGammaApproachesZeroPrivileged) {
  const Matrix h = testutil::random_matrix(9, 5, 19);
  const Matrix hp = testutil::random_matrix(9, 4, 20);
  const Matrix y = testutil::random_matrix(9, 2, 21);
  const PlusSolution s = solve_rvfl_plus(h, hp, y, 2.5, 1e12);
  EXPECT_TRUE(testutil::near(s.w, solve_rvfl_plus(h, Matrix::Zero(9, 4), y, 2.5, 1.0).w, 1e-6));
}

TEST(RvflPlus, SpecInstanceMatchesOracle) {
  // N=5, n=2, d=2, P=3, m=2, C=2, γ=3
  const auto layer = EnhancementLayer::init(2, 3, Activation::Sigmoid, 1.0, 1);
  const auto priv = EnhancementLayer::init(2, 3, Activation::Sigmoid, 1.0, 2);
  const Matrix h = layer.apply(testutil::random_matrix(5, 2, 22));
  const Matrix hp = priv.apply(testutil::random_matrix(5, 2, 23));
  const Matrix y = testutil::random_matrix(5, 2, 24);
  const PlusSolution s = solve_rvfl_plus(h, hp, y, 2.0, 3.0);
  const auto ref = oracle::solve_primal_kkt(h, hp, y, 2.0, 3.0);
  EXPECT_TRUE(testutil::near(s.w, ref.w, 1e-8));
  EXPECT_TRUE(testutil::near(s.w_corr, ref.w_corr, 1e-8));
  EXPECT_TRUE(testutil::near(s.lambda, ref.lambda, 1e-8));
}

TEST(RvflPlus, StationarityAndFeasibility) {
  const Matrix h = testutil::random_matrix(14, 6, 25);
  const Matrix hp = testutil::random_matrix(14, 5, 26);
  const Matrix y = testutil::random_matrix(14, 3, 27);
  const double c = 4.0;
  const double gamma = 0.5;
  const PlusSolution s = solve_rvfl_plus(h, hp, y, c, gamma);
  const Matrix ones = Matrix::Ones(14, 3);
  EXPECT_LE((s.w - h.transpose() * s.lambda).norm(), 1e-8 * std::max(1.0, s.w.norm()));
  EXPECT_LE((gamma * s.w_corr - hp.transpose() * s.lambda + c * hp.transpose() * ones).norm(),
            1e-8 * std::max(1.0, (c * hp.transpose() * ones).norm()));
  // the slack of the ridge-augmented primal is λ/C
  EXPECT_LE((h * s.w + hp * s.w_corr + s.lambda / c - y).norm(), 1e-8 * std::max(1.0, y.norm()));
}

TEST(RvflPlus, ObjectiveBeatsRandomPerturbations) {
  const Matrix h = testutil::random_matrix(10, 4, 28);
  const Matrix hp = testutil::random_matrix(10, 3, 29);
  const Matrix y = testutil::random_matrix(10, 2, 30);
  const double c = 3.0;
  const double gamma = 2.0;
  const PlusSolution s = solve_rvfl_plus(h, hp, y, c, gamma);
  const double best = oracle::primal_objective(h, hp, y, c, gamma, s.w, s.w_corr);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 1000; ++t) {
    Matrix dw(s.w.rows(), s.w.cols());
    Matrix dwc(s.w_corr.rows(), s.w_corr.cols());
    const double scale = std::pow(10.0, -1 - (t % 6));
    for (Index i = 0; i < dw.size(); ++i) dw.data()[i] = scale * normal(rng);
    for (Index i = 0; i < dwc.size(); ++i) dwc.data()[i] = scale * normal(rng);
    EXPECT_LE(best, oracle::primal_objective(h, hp, y, c, gamma, s.w + dw, s.w_corr + dwc) + 1e-12);
  }
}

TEST(RvflPlus, FlippedSignDisagreesWithOracle) {
  const Matrix h = testutil::random_matrix(8, 4, 32);
  const Matrix hp = testutil::random_matrix(8, 3, 33);
  const Matrix y = testutil::random_matrix(8, 1, 34);
  const auto ref = oracle::solve_primal_kkt(h, hp, y, 5.0, 1.0);
  const PlusSolution wrong = solve_rvfl_plus(h, hp, y, 5.0, 1.0, RhsSign::FlippedSign);
  EXPECT_GT(testutil::rel_diff(wrong.w, ref.w), 1e-3);
}

TEST(RvflPlus, TrainDiagnostics) {
  const auto layer = EnhancementLayer::init(3, 7, Activation::Sine, 1.0, 1);
  const auto priv = EnhancementLayer::init(2, 4, Activation::Sine, 1.0, 2);
  const Matrix x = testutil::random_matrix(12, 3, 35);
  const Matrix xp = testutil::random_matrix(12, 2, 36);
  const Matrix y = testutil::random_matrix(12, 2, 37);
  const auto [model, diag] = train_rvfl_plus(layer, priv, x, xp, y, 1.0, 1000.0);
  EXPECT_GE(diag.kkt_residual, 0.0);
  EXPECT_LE(diag.kkt_residual, 1e-8);
  EXPECT_EQ(diag.lambda.rows(), 12);
  EXPECT_FALSE(diag.ill_conditioned());
  EXPECT_EQ(model.weights.rows(), 10);
  EXPECT_EQ(model.correction_weights.rows(), 6);
  EXPECT_TRUE(testutil::near(model.predict(x), layer.apply(x) * model.weights, 0.0));
}

TEST(RvflPlus, Errors) {
  const Matrix h = testutil::random_matrix(4, 2, 1);
  EXPECT_THROW(solve_rvfl_plus(h, h.topRows(3), Matrix::Zero(4, 1), 1, 1), std::invalid_argument);
  EXPECT_THROW(solve_rvfl_plus(h, h, Matrix::Zero(4, 1), 0, 1), std::invalid_argument);
  EXPECT_THROW(solve_rvfl_plus(h, h, Matrix::Zero(4, 1), 1, 0), std::invalid_argument);
}

TEST(RvflModels, TrainWrappers) {
  const auto layer = EnhancementLayer::init(3, 5, Activation::Radbas, 1.0, 4);
  const Matrix x = testutil::random_matrix(20, 3, 38);
  const Matrix y = testutil::random_matrix(20, 2, 39);
  const Matrix h = layer.apply(x);
  const RvflModel p = train_rvfl_pinv(layer, x, y);
  EXPECT_EQ(p.variant, RvflModel::Variant::Pinv);
  EXPECT_TRUE(testutil::near(p.weights, solve_pinv(h, y), 0.0));
  const RvflModel r = train_rvfl_ridge(layer, x, y, 0.3);
  EXPECT_TRUE(testutil::near(r.predict(x), h * solve_ridge(h, y, 0.3), 0.0));
}
