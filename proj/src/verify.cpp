#include "rvfl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rvfl/enhancement.hpp"
#include "rvfl/qp_oracle.hpp"

namespace rvfl {

double VerifyCase::worst() const { return std::max({w_error, w_corr_error, lambda_error, kkt_residual}); }

double relative_error(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("relative_error: shape mismatch");
  const double diff = (a - b).norm();
  const double scale = b.norm();
  return scale > 0.0 ? diff / scale : diff;
}

VerifyReport verify_closed_form(int instances, std::uint64_t seed, RhsSign sign, double tolerance) {
  if (instances < 1) throw std::invalid_argument("need at least one instance");
  VerifyReport report;
  report.tolerance = tolerance;
  std::mt19937_64 rng(seed);
  auto pick = [&rng](Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); };
  std::uniform_real_distribution<double> log_cg(std::log(0.1), std::log(100.0));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> normal;

  for (int t = 0; t < instances; ++t) {
    VerifyCase vc;
    vc.samples = pick(2, 20);
    vc.normal_features = pick(1, 4);
    vc.priv_features = pick(1, 4);
    vc.nodes = pick(0, 5);
    vc.priv_nodes = pick(0, 5);
    vc.outputs = pick(1, 3);
    vc.c = std::exp(log_cg(rng));
    vc.gamma = std::exp(log_cg(rng));
    const auto act = kAllActivations[static_cast<std::size_t>(pick(0, 4))];
    const std::uint64_t layer_seed = rng();

    Matrix x(vc.samples, vc.normal_features);
    Matrix xp(vc.samples, vc.priv_features);
    Matrix y(vc.samples, vc.outputs);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = unit(rng);
    for (Index i = 0; i < xp.size(); ++i) xp.data()[i] = unit(rng);
    for (Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);

    const Matrix h = EnhancementLayer::init(vc.normal_features, vc.nodes, act, 1.0, layer_seed).apply(x);
    const Matrix hp = EnhancementLayer::init(vc.priv_features, vc.priv_nodes, act, 1.0, layer_seed + 1).apply(xp);

    const PlusSolution closed = solve_rvfl_plus(h, hp, y, vc.c, vc.gamma, sign);
    const oracle::OracleSolution ref = oracle::solve_primal_kkt(h, hp, y, vc.c, vc.gamma);
    vc.w_error = relative_error(closed.w, ref.w);
    vc.w_corr_error = relative_error(closed.w_corr, ref.w_corr);
    vc.lambda_error = relative_error(closed.lambda, ref.lambda);
    vc.kkt_residual = oracle::kkt_residual(h, hp, y, vc.c, vc.gamma, closed.w, closed.w_corr, closed.lambda);
    report.max_residual = std::max(report.max_residual, vc.worst());
    report.cases.push_back(vc);
  }
  return report;
}

}  // namespace rvfl
