#pragma once

#include <optional>
#include <vector>

#include "qsd/spectral.hpp"
#include "qsd/subtraction.hpp"

namespace qsd {

/// One (state, level) index into a family of spectral forms. Indices are
/// 0-based.
struct LevelKey {
    int state = -1;
    int level = -1;
    bool operator==(const LevelKey&) const = default;
};

/// All (state, level) pairs arranged by non-increasing eigenvalue. Position 0
/// holds a sentinel key {-1,-1}; real entries occupy positions 1..size().
struct OrderingMap {
    std::vector<LevelKey> seq;
    int size() const { return static_cast<int>(seq.size()) - 1; }
    const LevelKey& at(int m) const { return seq[static_cast<std::size_t>(m)]; }
};

/// Sorts every eigenvalue of every form descending. Ties break
/// lexicographically by (state index, level index), so the order is total
/// and deterministic.
OrderingMap order_eigenvalues(const std::vector<SpectralForm>& forms);

/// The ensemble after overlap reduction: per ordered position the reduced
/// eigenspace, and per state the matrix rebuilt from reduced eigenspaces,
/// which stays below the original in the PSD order.
struct DugEnsemble {
    int dim = 0;
    double epsilon = 0.0;
    OrderingMap ordering;
    std::vector<Subspace> reduced;       // aligned with ordering positions; [0] is the zero subspace
    std::vector<std::vector<int>> position; // position[state][level] -> ordered index m

    /// sum_k value_{ik} * Proj(reduced eigenspace ik) for state i.
    ComplexMatrix approx_state(const std::vector<SpectralForm>& forms, int i) const;
};

/// Walks the ordering and strips, from each eigenspace, the directions that
/// overlap earlier-ordered original eigenspaces by eps or more (a left fold
/// of eps_subtract). Afterwards all pairs of reduced eigenspaces overlap by
/// at most eps.
DugEnsemble dig_eigenspaces(const std::vector<SpectralForm>& forms, const OrderingMap& ordering,
                            double eps);

/// Gram-Schmidt pass over the reduced eigenspaces in ordering sequence:
/// each one is projected onto the orthogonal complement of everything
/// accepted so far (modified Gram-Schmidt, one re-orthogonalization pass,
/// residuals below 1e-10 dropped). Returns the mutually orthogonal
/// subspaces aligned with ordering positions; entry 0 is the zero subspace.
std::vector<Subspace> orthogonalize(const DugEnsemble& dug);

/// The finished projective measurement. outcomes[i] carries the projector
/// for hypothesis i; the leftover projector onto the unassigned complement
/// is folded into the last outcome and also kept separately as residual.
struct ProjectiveMeasurement {
    std::vector<ComplexMatrix> outcomes;
    ComplexMatrix residual;
    double epsilon = 0.0;
    std::vector<std::vector<Subspace>> outcome_subspaces; // [state][level]
};

/// Default overlap-reduction parameter 2 / (5 (r-1) T).
double default_epsilon(int r, int t_max);

/// Full pipeline on an ensemble of weighted states: spectral forms,
/// eigenvalue ordering, overlap reduction, orthogonalization, projectors.
/// When eps is omitted the default for the ensemble's (r, T) is used. A
/// supplied eps must satisfy (r-1)*T*eps < 1/2; otherwise EpsilonTooLarge.
ProjectiveMeasurement build_measurement(const std::vector<WeightedState>& ensemble,
                                        std::optional<double> eps = std::nullopt);

/// Same pipeline starting from precomputed weighted spectral forms (used by
/// the tensor-power harness, where forms are assembled combinatorially).
ProjectiveMeasurement build_measurement_from_forms(const std::vector<SpectralForm>& forms,
                                                   std::optional<double> eps = std::nullopt);

/// Average error sum_i tr A_i (I - M_i) of a measurement on weighted states
/// given as dense matrices.
double error_probability(const std::vector<ComplexMatrix>& weighted_states,
                         const ProjectiveMeasurement& m);
double error_probability(const std::vector<WeightedState>& ensemble,
                         const ProjectiveMeasurement& m);

struct PovmReport {
    double completeness_residual = 0.0; // ||sum M_i - I||_F
    double max_cross_norm = 0.0;        // max_{i != j} ||M_i M_j||_F
    double min_eigenvalue = 0.0;        // over all elements
};

PovmReport validate_povm(const std::vector<ComplexMatrix>& elements);

} // namespace qsd
