#include "rvfl/kernels.hpp"

#include <cmath>
#include <sstream>

#include <omp.h>

namespace rvfl {

void KernelSpec::validate() const {
  if (const auto* g = std::get_if<GaussianKernel>(&mercer)) {
    if (!(g->tau > 0.0) || !std::isfinite(g->tau)) throw std::invalid_argument("Gaussian tau must be positive");
  }
  if (const auto* p = std::get_if<PolynomialKernel>(&mercer)) {
    if (p->degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  }
}

std::string KernelSpec::describe() const {
  std::ostringstream out;
  out << (includes_linear ? "linear+" : "");
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, GaussianKernel>) {
          out << "gaussian(tau=" << k.tau << ")";
        } else if constexpr (std::is_same_v<K, PolynomialKernel>) {
          out << "polynomial(degree=" << k.degree << ",coef=" << k.coef << ")";
        } else {
          out << "none";
        }
      },
      mercer);
  return out.str();
}

namespace {

inline double dot(const double* u, const double* v, Index n) {
  double s = 0.0;
  for (Index k = 0; k < n; ++k) s += u[k] * v[k];
  return s;
}

inline double squared_distance(const double* u, const double* v, Index n) {
  double s = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double d = u[k] - v[k];
    s += d * d;
  }
  return s;
}

inline double eval_pair(const KernelSpec& spec, const double* u, const double* v, Index n) {
  double value = spec.includes_linear ? dot(u, v, n) : 0.0;
  if (const auto* g = std::get_if<GaussianKernel>(&spec.mercer)) {
    value += std::exp(-squared_distance(u, v, n) / g->tau);
  } else if (const auto* p = std::get_if<PolynomialKernel>(&spec.mercer)) {
    value += std::pow(dot(u, v, n) + p->coef, p->degree);
  }
  return value;
}

void check_widths(const Matrix& x_a, const Matrix& x_b) {
  if (x_a.cols() != x_b.cols()) {
    throw std::invalid_argument("kernel inputs have " + std::to_string(x_a.cols()) + " and " +
                                std::to_string(x_b.cols()) + " features");
  }
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("kernel arguments differ in length");
  return eval_pair(spec, u.data(), v.data(), static_cast<Index>(u.size()));
}

namespace kernels {

int max_threads() { return omp_get_max_threads(); }

Matrix enhance_serial(const Matrix& x, const Matrix& a, const Vector& b, Activation activation) {
  const Index n_rows = x.rows();
  const Index n = x.cols();
  const Index p = a.cols();
  Matrix out(n_rows, n + p);
  out.leftCols(n) = x;
  for (Index i = 0; i < n_rows; ++i) {
    for (Index j = 0; j < p; ++j) {
      double t = b(j);
      for (Index k = 0; k < n; ++k) t += x(i, k) * a(k, j);
      out(i, n + j) = activation_eval(activation, t);
    }
  }
  return out;
}

Matrix enhance_omp(const Matrix& x, const Matrix& a, const Vector& b, Activation activation) {
  const Index n_rows = x.rows();
  const Index n = x.cols();
  const Index p = a.cols();
  Matrix out(n_rows, n + p);
  out.leftCols(n) = x;
  // same accumulation order as the serial kernel, so results are bit-identical
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < p; ++j) {
    const double* column = a.col(j).data();
    for (Index i = 0; i < n_rows; ++i) {
      double t = b(j);
      for (Index k = 0; k < n; ++k) t += x(i, k) * column[k];
      out(i, n + j) = activation_eval(activation, t);
    }
  }
  return out;
}

Matrix gram_serial(const Matrix& x_a, const Matrix& x_b, const KernelSpec& spec) {
  check_widths(x_a, x_b);
  const RowMatrix ra = x_a;
  const RowMatrix rb = x_b;
  const Index n = x_a.cols();
  Matrix out(x_a.rows(), x_b.rows());
  for (Index i = 0; i < ra.rows(); ++i) {
    for (Index j = 0; j < rb.rows(); ++j) out(i, j) = eval_pair(spec, ra.row(i).data(), rb.row(j).data(), n);
  }
  return out;
}

Matrix gram_omp(const Matrix& x_a, const Matrix& x_b, const KernelSpec& spec) {
  check_widths(x_a, x_b);
  const RowMatrix ra = x_a;
  const RowMatrix rb = x_b;
  const Index n = x_a.cols();
  Matrix out(x_a.rows(), x_b.rows());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < rb.rows(); ++j) {
    for (Index i = 0; i < ra.rows(); ++i) out(i, j) = eval_pair(spec, ra.row(i).data(), rb.row(j).data(), n);
  }
  return out;
}

Matrix gram_symmetric_omp(const Matrix& x, const KernelSpec& spec) {
  const RowMatrix r = x;
  const Index n = x.cols();
  const Index rows = x.rows();
  Matrix out(rows, rows);
#pragma omp parallel for schedule(dynamic, 8)
  for (Index j = 0; j < rows; ++j) {
    for (Index i = 0; i <= j; ++i) out(i, j) = eval_pair(spec, r.row(i).data(), r.row(j).data(), n);
  }
  for (Index j = 0; j < rows; ++j) {
    for (Index i = j + 1; i < rows; ++i) out(i, j) = out(j, i);
  }
  return out;
}

}  // namespace kernels
}  // namespace rvfl
