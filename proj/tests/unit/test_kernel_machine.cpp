#include <gtest/gtest.h>

#include <cmath>

#include "rvfl/kernel_machine.hpp"
#include "rvfl/solvers.hpp"
#include "test_util.hpp"

using namespace rvfl;

namespace {

KernelSpec linear_only() {
  KernelSpec s;
  s.mercer = NoMercerKernel{};
  return s;
}

KernelSpec poly2(double coef) {
  KernelSpec s;
  s.mercer = PolynomialKernel{2, coef};
  return s;
}

// Explicit features with φ(u)·φ(v) = (⟨u,v⟩ + c)², prefixed by u itself for
// the linear part: [u | uᵢuⱼ (all ordered pairs) | √(2c)·uᵢ | c].
Matrix poly2_features(const Matrix& x, double coef) {
  const Index n = x.cols();
  Matrix h(x.rows(), n + n * n + n + 1);
  for (Index r = 0; r < x.rows(); ++r) {
    Index k = 0;
    for (Index i = 0; i < n; ++i) h(r, k++) = x(r, i);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) h(r, k++) = x(r, i) * x(r, j);
    }
    for (Index i = 0; i < n; ++i) h(r, k++) = std::sqrt(2.0 * coef) * x(r, i);
    h(r, k++) = coef;
  }
  return h;
}

Matrix kernel_ridge(const Matrix& x, const Matrix& y, const KernelSpec& spec, double c) {
  Matrix a = gram_matrix(x, x, spec);
  a.diagonal().array() += 1.0 / c;
  return a.fullPivLu().solve(y);
}

}  // namespace

TEST(Krvfl, ZeroPrivilegedReducesToKernelRidge) {
  const Matrix x = testutil::random_matrix(12, 3, 1);
  const Matrix y = testutil::random_matrix(12, 2, 2);
  const auto [model, diag] =
      train_krvfl_plus(x, Matrix::Zero(12, 2), y, KernelSpec{}, linear_only(), 3.0, 7.0);
  EXPECT_TRUE(testutil::near(model.w_kernel, kernel_ridge(x, y, KernelSpec{}, 3.0), 1e-10));
  EXPECT_LE(diag.kkt_residual, 1e-12);
}

TEST(Krvfl, LargeGammaApproachesKernelRidge) {
  const Matrix x = testutil::random_matrix(15, 3, 3);
  const Matrix xp = testutil::random_matrix(15, 2, 4);
  const Matrix y = testutil::random_matrix(15, 1, 5);
  const auto [model, diag] = train_krvfl_plus(x, xp, y, KernelSpec{}, KernelSpec{}, 2.0, 1e12);
  EXPECT_TRUE(testutil::near(model.w_kernel, kernel_ridge(x, y, KernelSpec{}, 2.0), 1e-6));
}

TEST(Krvfl, FiniteFeatureMapMatchesRvflPlus) {
  const double coef = 0.8;
  const Matrix x = testutil::random_matrix(6, 2, 6);
  const Matrix xp = testutil::random_matrix(6, 3, 7);
  const Matrix y = testutil::random_matrix(6, 2, 8);
  const Matrix z = testutil::random_matrix(4, 2, 9);
  const double c = 1.7;
  const double gamma = 4.0;

  const auto [model, diag] = train_krvfl_plus(x, xp, y, poly2(coef), poly2(coef), c, gamma);
  const Matrix h = poly2_features(x, coef);
  const PlusSolution sol = solve_rvfl_plus(h, poly2_features(xp, coef), y, c, gamma);

  EXPECT_TRUE(testutil::near(model.w_kernel, sol.lambda, 1e-8));
  EXPECT_TRUE(testutil::near(model.predict(z), poly2_features(z, coef) * sol.w, 1e-8));
}

TEST(Krvfl, TrainRowsGiveFittedValues) {
  const Matrix x = testutil::random_matrix(10, 3, 10);
  const Matrix xp = testutil::random_matrix(10, 2, 11);
  const Matrix y = testutil::random_matrix(10, 3, 12);
  const auto [model, diag] = train_krvfl_plus(x, xp, y, KernelSpec{}, KernelSpec{}, 1.0, 5000.0);
  const Matrix fitted = gram_matrix(x, x, KernelSpec{}) * model.w_kernel;
  EXPECT_LE((model.predict(x) - fitted).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(model.x_train, x);
}

TEST(Krvfl, ScalarExpansion) {
  Matrix x(2, 1);
  x << 0.5, -1.0;
  Matrix y(2, 1);
  y << 1.0, -1.0;
  KernelSpec spec;
  spec.mercer = GaussianKernel{2.0};
  const auto [model, diag] = train_krvfl_plus(x, x, y, spec, spec, 1.0, 10.0);
  const double z = 0.2;
  double expected = 0.0;
  for (Index i = 0; i < 2; ++i) {
    expected += (z * x(i, 0) + std::exp(-(z - x(i, 0)) * (z - x(i, 0)) / 2.0)) * model.w_kernel(i, 0);
  }
  Matrix zm(1, 1);
  zm << z;
  EXPECT_NEAR(model.predict(zm)(0, 0), expected, 1e-14);
}

TEST(Krvfl, EmptyBatch) {
  const Matrix x = testutil::random_matrix(5, 2, 13);
  const auto [model, diag] = train_krvfl_plus(x, x, testutil::random_matrix(5, 3, 14), KernelSpec{}, KernelSpec{},
                                              1.0, 1.0);
  const Matrix out = model.predict(Matrix(0, 2));
  EXPECT_EQ(out.rows(), 0);
  EXPECT_EQ(out.cols(), 3);
}

TEST(Krvfl, SystemEigenvaluesAboveRidgeShift) {
  const Matrix x = testutil::random_matrix(30, 3, 15);
  const Matrix xp = testutil::random_matrix(30, 2, 16);
  const double c = 0.5;
  const double gamma = 3.0;
  Matrix system = gram_matrix(x, x, KernelSpec{}) + gram_matrix(xp, xp, KernelSpec{}) / gamma;
  system.diagonal().array() += 1.0 / c;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(system, Eigen::EigenvaluesOnly);
  EXPECT_GE(eig.eigenvalues().minCoeff(), 1.0 / c - 1e-10);
}

TEST(Krvfl, Errors) {
  const Matrix x = testutil::random_matrix(5, 2, 1);
  EXPECT_THROW(train_krvfl_plus(x, x.topRows(4), Matrix::Zero(5, 1), KernelSpec{}, KernelSpec{}, 1, 1),
               std::invalid_argument);
  EXPECT_THROW(train_krvfl_plus(x, x, Matrix::Zero(5, 1), KernelSpec{}, KernelSpec{}, 0, 1), std::invalid_argument);
  EXPECT_THROW(train_krvfl_plus(x, x, Matrix::Zero(5, 1), KernelSpec{}, KernelSpec{}, 1, -1), std::invalid_argument);
  const auto [model, diag] = train_krvfl_plus(x, x, Matrix::Zero(5, 1), KernelSpec{}, KernelSpec{}, 1, 1);
  EXPECT_THROW(model.predict(Matrix::Zero(2, 3)), std::invalid_argument);
}
