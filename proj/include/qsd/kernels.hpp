#pragma once

#include "qsd/complex_matrix.hpp"

namespace qsd {

/// Largest allowed result dimension for tensor products and tensor powers.
inline constexpr int kDefaultDimCap = 4096;

namespace kernels {

// Serial reference kernels. Each output entry is accumulated in a fixed
// order, and the parallel variants below reuse the same per-row routines,
// so serial and parallel results are bit-identical.

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);

/// a^dagger * b without materializing the adjoint.
ComplexMatrix adj_matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron_serial(const ComplexMatrix& a, const ComplexMatrix& b);

// OpenMP kernels; fall back to the serial path for small inputs.

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adj_matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace kernels

/// Kronecker product of two square matrices with a result-dimension guard.
/// Throws DimensionOverflow when dim(a)*dim(b) exceeds dim_cap.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             int dim_cap = kDefaultDimCap);

} // namespace qsd
