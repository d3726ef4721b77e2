#pragma once

#include <vector>

#include "qsd/spectral.hpp"

namespace qsd {

/// Spectral form of prior * state for every ensemble member.
std::vector<SpectralForm> weighted_forms(const std::vector<WeightedState>& ensemble);

/// sum over state pairs i<j and level pairs (k,l) of
/// min(lambda_ik, lambda_jl) * tr(Q_ik Q_jl), with the level values carrying
/// the prior weights. Pairs are evaluated independently (in parallel when
/// available) and reduced in a fixed order, so the result matches the serial
/// reference bit for bit.
double pairwise_overlap_sum(const std::vector<SpectralForm>& forms);
double pairwise_overlap_sum_serial(const std::vector<SpectralForm>& forms);

/// f(r,T) = 25 (r-1)^2 T^2 / 4 + 3: the exact prefactor of the one-shot
/// upper bound. Always below the rounded 10 (r-1)^2 T^2.
double one_shot_upper_factor(int r, int t_max);

/// f(r,T) * pairwise_overlap_sum, with T the largest level count.
double one_shot_upper(const std::vector<SpectralForm>& forms);
double one_shot_upper(const std::vector<WeightedState>& ensemble);

/// pairwise_overlap_sum / (2 (r-1)).
double one_shot_lower(const std::vector<SpectralForm>& forms);
double one_shot_lower(const std::vector<WeightedState>& ensemble);

/// The scalar map s -> tr A^s B^{1-s} evaluated through the spectral forms
/// of A and B (matrix powers on the support, 0^s = 0 throughout [0,1]).
class TraceCurve {
public:
    TraceCurve(const SpectralForm& a, const SpectralForm& b);
    double eval(double s) const;

private:
    std::vector<double> log_a_, log_b_;
    std::vector<double> gram_; // row-major, levels(a) x levels(b)
};

struct CurveMinimum {
    double s = 0.0;
    double value = 0.0;
};

/// Coarse scan on a 1025-point grid over [0,1], then golden-section
/// refinement around the best grid point until the bracket is narrower than
/// 1e-8. The returned value never exceeds any evaluated sample.
CurveMinimum minimize_trace_curve(const TraceCurve& curve);

/// min over s in [0,1] of tr A1^s A2^{1-s} for two weighted states.
double audenaert_bound(const WeightedState& a1, const WeightedState& a2);
double audenaert_bound(const SpectralForm& f1, const SpectralForm& f2);

/// Binary quantum Chernoff distance max_s {-log tr rho1^s rho2^{1-s}}.
/// +infinity when the minimized trace underflows (orthogonal supports).
double chernoff_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// min over unordered pairs of chernoff_distance.
double multiple_chernoff(const std::vector<ComplexMatrix>& states);

/// Symmetric r x r matrix of pairwise Chernoff distances, zero diagonal.
std::vector<std::vector<double>> chernoff_matrix(const std::vector<ComplexMatrix>& states);

/// Exact optimal binary error (tr(A1 + A2) - ||A1 - A2||_1) / 2.
double helstrom_error(const WeightedState& a1, const WeightedState& a2);
double helstrom_error(const ComplexMatrix& a1, const ComplexMatrix& a2);

/// Exact optimum for simultaneously diagonal weighted states:
/// tr sum A_i - sum_x max_i (A_i)_xx. Throws NotCommuting when any state
/// carries off-diagonal mass above 1e-10.
double diagonal_oracle(const std::vector<ComplexMatrix>& weighted_states);
double diagonal_oracle(const std::vector<WeightedState>& ensemble);

/// Pretty good measurement M_i = S^{-1/2} A_i S^{-1/2}, S = sum A_j
/// (inverse on the joint support).
std::vector<ComplexMatrix> pgm_povm(const std::vector<ComplexMatrix>& weighted_states);
double pgm_error(const std::vector<ComplexMatrix>& weighted_states);
double pgm_error(const std::vector<WeightedState>& ensemble);

struct DualCertificate {
    bool feasible = false;
    double lower_bound = 0.0; // certified lower bound on the optimal error when feasible
};

/// Checks X >= A_i for all i (minimum eigenvalue >= -1e-8) and reports
/// tr sum A_i - tr X, a certified lower bound on the optimal error whenever
/// the check passes.
DualCertificate dual_feasibility(const ComplexMatrix& x,
                                 const std::vector<ComplexMatrix>& weighted_states);

/// Spectrum compressed onto the dyadic grid 2^m * lambda_min: every level in
/// [2^{m-1} lambda_min, 2^m lambda_min) is lifted to 2^m lambda_min. The
/// result commutes with the original and sits between it and twice it.
struct BinnedState {
    SpectralForm original;
    SpectralForm binned;
    int bin_bound = 0; // floor(log2(2 lambda_max / lambda_min))
};

BinnedState bin_spectrum(const SpectralForm& s);

/// h(r,L) = 40 (r-1)^2 L^2 with L the largest dyadic bin bound; multiplies
/// the overlap sum of the original (unbinned) levels.
double one_shot_upper_binned_factor(int r, int l_max);
double one_shot_upper_binned(const std::vector<SpectralForm>& forms);
double one_shot_upper_binned(const std::vector<WeightedState>& ensemble);

} // namespace qsd
