#pragma once

#include <vector>

#include "qsd/complex_matrix.hpp"

namespace qsd {

/// Result of a Hermitian eigendecomposition: H = V diag(eigenvalues) V^dagger,
/// eigenvalues ascending, eigenvector columns orthonormal.
struct EigDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. The sweep order,
/// rotation sign convention and tie handling are fixed, so identical input
/// bits always produce identical output bits.
///
/// Throws NonHermitian when ||H - H^dagger||_F > 1e-9 * max(1, ||H||_F),
/// NoConvergence when the off-diagonal norm is still above tolerance after
/// 100 sweeps.
EigDecomposition herm_eig(const ComplexMatrix& h);

/// Eigenvalues only (ascending); skips accumulating the eigenvector matrix.
std::vector<double> herm_eigvals(const ComplexMatrix& h);

/// Sum of |eigenvalue| over the spectrum of a Hermitian matrix.
double trace_norm(const ComplexMatrix& h);

} // namespace qsd
