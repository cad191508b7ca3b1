#pragma once

// Data-parallel hot loops. Each kernel has a straightforward serial version
// used as the reference in tests and an OpenMP version used by the library.

#include "rvfl/enhancement.hpp"
#include "rvfl/kernel_spec.hpp"
#include "rvfl/types.hpp"

namespace rvfl::kernels {

/// out = [x | G(x·a + 1·bᵀ)]
Matrix enhance_serial(const Matrix& x, const Matrix& a, const Vector& b, Activation activation);
Matrix enhance_omp(const Matrix& x, const Matrix& a, const Vector& b, Activation activation);

/// out(i, j) = K(x_a.row(i), x_b.row(j))
Matrix gram_serial(const Matrix& x_a, const Matrix& x_b, const KernelSpec& spec);
Matrix gram_omp(const Matrix& x_a, const Matrix& x_b, const KernelSpec& spec);

/// Symmetric Gram of x with itself; fills the upper triangle and mirrors it.
Matrix gram_symmetric_omp(const Matrix& x, const KernelSpec& spec);

int max_threads();

}  // namespace rvfl::kernels
