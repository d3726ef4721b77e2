#pragma once

#include <vector>

#include "qsd/complex_matrix.hpp"
#include "qsd/kernels.hpp"

namespace qsd {

/// Default relative gap below which neighboring eigenvalues are treated as
/// one degenerate level (relative to the largest eigenvalue).
inline constexpr double kDefaultClusterTol = 1e-9;

/// Eigenvalues at or below kRankCutoffRel * dim * lambda_max count as zero.
inline constexpr double kRankCutoffRel = 1e-12;

/// A prior weight paired with a PSD matrix. `normalized` marks a proper
/// density matrix (unit trace); the weighted matrix is prior * state.
struct WeightedState {
    double prior = 1.0;
    ComplexMatrix state;
    bool normalized = true;

    ComplexMatrix weighted() const { return prior * state; }

    /// Checks prior range, Hermiticity, positive semidefiniteness and
    /// (when normalized) unit trace. Throws ValidationError / NotPsd.
    void validate() const;
};

/// A subspace of C^dim held as an orthonormal column basis. rank 0 encodes
/// the zero subspace.
struct Subspace {
    int ambient_dim = 0;
    ComplexMatrix basis; // ambient_dim x rank

    static Subspace zero(int dim) { return Subspace{dim, ComplexMatrix(dim, 0)}; }
    int rank() const { return basis.cols(); }
};

/// Eigenspace-level spectral form of a PSD matrix: strictly decreasing
/// positive eigenvalues, one orthonormal basis per level, plus the kernel
/// dimension. The number of levels is the matrix's distinct-eigenvalue count.
struct SpectralForm {
    struct Level {
        double value = 0.0;
        ComplexMatrix basis; // dim x rank
        int rank() const { return basis.cols(); }
    };

    int dim = 0;
    std::vector<Level> levels;
    int kernel_dim = 0;

    int num_levels() const { return static_cast<int>(levels.size()); }
    int support_rank() const;
    double trace() const;
    double max_eigenvalue() const { return levels.empty() ? 0.0 : levels.front().value; }
    double min_eigenvalue() const { return levels.empty() ? 0.0 : levels.back().value; }

    /// Dense reconstruction sum_k value_k * B_k B_k^dagger.
    ComplexMatrix dense() const;

    Subspace level_subspace(int k) const { return Subspace{dim, levels[static_cast<std::size_t>(k)].basis}; }

    /// Same eigenspaces with every eigenvalue multiplied by w > 0.
    SpectralForm scaled(double w) const;
};

/// Eigendecomposition of a PSD matrix clustered into distinct levels.
/// Neighboring eigenvalues merge when their gap is at most
/// cluster_tol * lambda_max; eigenvalues at or below the rank cutoff go to
/// the kernel. Throws NotPsd when a clustered eigenvalue is below minus the
/// rank cutoff.
SpectralForm spectral_decompose(const ComplexMatrix& a, double cluster_tol = kDefaultClusterTol);

/// Spectral form of the n-fold Kronecker power, assembled combinatorially
/// from the base levels: one candidate level per multiset of base level
/// indices, merged by the same cluster tolerance when products collide.
/// Never re-diagonalizes the big matrix, so degenerate product levels stay
/// intact. Throws DimensionOverflow when dim^n exceeds dim_cap.
SpectralForm tensor_power(const SpectralForm& s, int n, int dim_cap = kDefaultDimCap,
                          double cluster_tol = kDefaultClusterTol);

/// Largest principal-angle cosine between two subspaces of the same ambient
/// space; 0 when either is the zero subspace. Always in [0, 1].
double overlap(const Subspace& s1, const Subspace& s2);

/// B B^dagger: the orthogonal projector onto the subspace.
ComplexMatrix projector(const Subspace& s);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns whose
/// residual norm drops below drop_tol are discarded. Deterministic: columns
/// are processed left to right.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& cols, double drop_tol = 1e-10);

} // namespace qsd
