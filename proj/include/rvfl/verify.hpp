#pragma once

#include <cstdint>
#include <vector>

#include "rvfl/solvers.hpp"

namespace rvfl {

/// One randomized closed-form vs KKT-oracle comparison.
struct VerifyCase {
  Index samples = 0;
  Index normal_features = 0;
  Index priv_features = 0;
  Index nodes = 0;
  Index priv_nodes = 0;
  Index outputs = 0;
  double c = 0.0;
  double gamma = 0.0;
  double w_error = 0.0;       // relative, Frobenius
  double w_corr_error = 0.0;  // relative, Frobenius
  double lambda_error = 0.0;  // relative, Frobenius
  double kkt_residual = 0.0;  // of the closed-form solution

  double worst() const;
};

struct VerifyReport {
  std::vector<VerifyCase> cases;
  double max_residual = 0.0;
  double tolerance = 1e-8;

  bool passed() const { return max_residual <= tolerance; }
};

/// Instances draw N∈[2,20], n,d∈[1,4], P,P̃∈[0,5], m∈[1,3] and C,γ
/// log-uniform on [0.1,100].
VerifyReport verify_closed_form(int instances, std::uint64_t seed, RhsSign sign = RhsSign::Consistent,
                                double tolerance = 1e-8);

/// ‖a − b‖_F / ‖b‖_F, falling back to the absolute difference when b = 0.
double relative_error(const Matrix& a, const Matrix& b);

}  // namespace rvfl
