#pragma once

#include <vector>

#include "qsd/spectral.hpp"

namespace qsd {

struct SubtractionResult {
    Subspace reduced;
    int removed_rank = 0;
    std::vector<double> eigenvalues_removed; // descending
};

/// Removes from s1 the eigen-directions of P1 P2 P1 whose eigenvalue reaches
/// eps^2, capping the overlap between the remainder and s2 at eps. The
/// eigenproblem is solved in s1's local coordinates (B1^dagger P2 B1). An
/// eigenvalue within 1e-12 of eps^2 counts as reaching it; with eps = 0 only
/// numerically nonzero eigenvalues are removed.
///
/// Throws InvalidEpsilon when eps is outside [0, 1].
SubtractionResult eps_subtract(const Subspace& s1, const Subspace& s2, double eps);

/// Overlap of the direct sums of two families of mutually orthogonal parts
/// whose pairwise cross overlaps are at most delta. The caller checks the
/// returned value against sqrt(T1*T2) * delta.
///
/// Throws PreconditionViolated when parts are not orthogonal within their
/// family or a cross overlap exceeds delta.
double check_lemma2(const std::vector<Subspace>& v_parts, const std::vector<Subspace>& w_parts,
                    double delta);

/// For subspaces with pairwise overlaps at most delta < 1/(2(r-1)), returns
///   D = (1-(r-1)delta)/(1-2(r-1)delta) * sum_i P_i  -  Proj(S_1+...+S_r).
/// The caller checks that D is PSD. Throws DeltaTooLarge when delta is at or
/// above 1/(2(r-1)), PreconditionViolated when a measured overlap exceeds
/// delta.
ComplexMatrix check_lemma3(const std::vector<Subspace>& subspaces, double delta);

} // namespace qsd
