#include "qsd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsd/eig.hpp"
#include "qsd/kernels.hpp"

namespace qsd {
namespace {

constexpr double kUnderflowFloor = 1e-300;
constexpr double kInf = std::numeric_limits<double>::infinity();

double pair_overlap_term(const SpectralForm& fi, const SpectralForm& fj) {
    double s = 0.0;
    for (const SpectralForm::Level& li : fi.levels) {
        for (const SpectralForm::Level& lj : fj.levels) {
            const ComplexMatrix g = kernels::adj_matmul_serial(li.basis, lj.basis);
            double w = 0.0;
            for (const cplx& v : g.data()) w += std::norm(v); // tr Q_ik Q_jl
            s += std::min(li.value, lj.value) * w;
        }
    }
    return s;
}

} // namespace

std::vector<SpectralForm> weighted_forms(const std::vector<WeightedState>& ensemble) {
    std::vector<SpectralForm> forms;
    forms.reserve(ensemble.size());
    for (const WeightedState& ws : ensemble) forms.push_back(spectral_decompose(ws.weighted()));
    return forms;
}

double pairwise_overlap_sum_serial(const std::vector<SpectralForm>& forms) {
    const int r = static_cast<int>(forms.size());
    double total = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            total += pair_overlap_term(forms[static_cast<std::size_t>(i)], forms[static_cast<std::size_t>(j)]);
    return total;
}

double pairwise_overlap_sum(const std::vector<SpectralForm>& forms) {
    const int r = static_cast<int>(forms.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);

    std::vector<double> partial(pairs.size(), 0.0);
    const int np = static_cast<int>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (np > 1)
    for (int p = 0; p < np; ++p)
        partial[static_cast<std::size_t>(p)] =
            pair_overlap_term(forms[static_cast<std::size_t>(pairs[static_cast<std::size_t>(p)].first)],
                              forms[static_cast<std::size_t>(pairs[static_cast<std::size_t>(p)].second)]);

    double total = 0.0;
    for (double v : partial) total += v; // ordered reduction
    return total;
}

double one_shot_upper_factor(int r, int t_max) {
    if (r < 2 || t_max < 1) throw ValidationError("one_shot_upper_factor: need r >= 2, T >= 1");
    const double rt = static_cast<double>(r - 1) * t_max;
    return 25.0 * rt * rt / 4.0 + 3.0;
}

double one_shot_upper(const std::vector<SpectralForm>& forms) {
    int t_max = 1;
    for (const SpectralForm& f : forms) t_max = std::max(t_max, f.num_levels());
    return one_shot_upper_factor(static_cast<int>(forms.size()), t_max) *
           pairwise_overlap_sum(forms);
}

double one_shot_upper(const std::vector<WeightedState>& ensemble) {
    return one_shot_upper(weighted_forms(ensemble));
}

double one_shot_lower(const std::vector<SpectralForm>& forms) {
    const int r = static_cast<int>(forms.size());
    if (r < 2) throw ValidationError("one_shot_lower: need r >= 2");
    return pairwise_overlap_sum(forms) / (2.0 * (r - 1));
}

double one_shot_lower(const std::vector<WeightedState>& ensemble) {
    return one_shot_lower(weighted_forms(ensemble));
}

TraceCurve::TraceCurve(const SpectralForm& a, const SpectralForm& b) {
    for (const SpectralForm::Level& l : a.levels) log_a_.push_back(std::log(l.value));
    for (const SpectralForm::Level& l : b.levels) log_b_.push_back(std::log(l.value));
    gram_.resize(log_a_.size() * log_b_.size(), 0.0);
    for (std::size_t k = 0; k < log_a_.size(); ++k)
        for (std::size_t l = 0; l < log_b_.size(); ++l) {
            const ComplexMatrix g =
                kernels::adj_matmul(a.levels[k].basis, b.levels[l].basis);
            double w = 0.0;
            for (const cplx& v : g.data()) w += std::norm(v);
            gram_[k * log_b_.size() + l] = w;
        }
}

double TraceCurve::eval(double s) const {
    double total = 0.0;
    for (std::size_t k = 0; k < log_a_.size(); ++k)
        for (std::size_t l = 0; l < log_b_.size(); ++l)
            total += std::exp(s * log_a_[k] + (1.0 - s) * log_b_[l]) * gram_[k * log_b_.size() + l];
    return total;
}

CurveMinimum minimize_trace_curve(const TraceCurve& curve) {
    constexpr int kGridPoints = 1025;
    double best_s = 0.0;
    double best_v = curve.eval(0.0);
    for (int i = 1; i < kGridPoints; ++i) {
        const double s = static_cast<double>(i) / (kGridPoints - 1);
        const double v = curve.eval(s);
        if (v < best_v) {
            best_v = v;
            best_s = s;
        }
    }

    const double h = 1.0 / (kGridPoints - 1);
    double lo = std::max(0.0, best_s - h);
    double hi = std::min(1.0, best_s + h);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = curve.eval(x1);
    double f2 = curve.eval(x2);
    while (hi - lo > 1e-8) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = curve.eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = curve.eval(x2);
        }
        if (f1 < best_v) {
            best_v = f1;
            best_s = x1;
        }
        if (f2 < best_v) {
            best_v = f2;
            best_s = x2;
        }
    }
    return CurveMinimum{best_s, best_v};
}

double audenaert_bound(const SpectralForm& f1, const SpectralForm& f2) {
    if (f1.num_levels() == 0 || f2.num_levels() == 0) return 0.0;
    return minimize_trace_curve(TraceCurve(f1, f2)).value;
}

double audenaert_bound(const WeightedState& a1, const WeightedState& a2) {
    return audenaert_bound(spectral_decompose(a1.weighted()), spectral_decompose(a2.weighted()));
}

double chernoff_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    if (std::abs(rho1.trace().real() - 1.0) > 1e-9 || std::abs(rho2.trace().real() - 1.0) > 1e-9)
        throw ValidationError("chernoff_distance expects unit-trace density matrices");
    const double v = audenaert_bound(spectral_decompose(rho1), spectral_decompose(rho2));
    if (v <= kUnderflowFloor) return kInf;
    return -std::log(v);
}

double multiple_chernoff(const std::vector<ComplexMatrix>& states) {
    if (states.size() < 2) throw ValidationError("multiple_chernoff: need r >= 2");
    double best = kInf;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            best = std::min(best, chernoff_distance(states[i], states[j]));
    return best;
}

std::vector<std::vector<double>> chernoff_matrix(const std::vector<ComplexMatrix>& states) {
    const std::size_t r = states.size();
    std::vector<std::vector<double>> m(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) m[i][j] = m[j][i] = chernoff_distance(states[i], states[j]);
    return m;
}

double helstrom_error(const ComplexMatrix& a1, const ComplexMatrix& a2) {
    ComplexMatrix diff = a1;
    diff -= a2;
    return 0.5 * (a1.trace().real() + a2.trace().real() - trace_norm(diff));
}

double helstrom_error(const WeightedState& a1, const WeightedState& a2) {
    return helstrom_error(a1.weighted(), a2.weighted());
}

double diagonal_oracle(const std::vector<ComplexMatrix>& weighted_states) {
    if (weighted_states.empty()) throw ValidationError("diagonal_oracle: empty ensemble");
    const int d = weighted_states.front().rows();
    for (const ComplexMatrix& a : weighted_states) {
        if (a.rows() != d || !a.is_square())
            throw ValidationError("diagonal_oracle: dimension mismatch");
        double off = 0.0;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (r != c) off += std::norm(a(r, c));
        if (std::sqrt(off) > 1e-10)
            throw NotCommutingError("diagonal_oracle: off-diagonal mass above tolerance");
    }
    double total = 0.0;
    for (const ComplexMatrix& a : weighted_states) total += a.trace().real();
    for (int x = 0; x < d; ++x) {
        double best = weighted_states.front()(x, x).real();
        for (const ComplexMatrix& a : weighted_states) best = std::max(best, a(x, x).real());
        total -= best;
    }
    return total;
}

double diagonal_oracle(const std::vector<WeightedState>& ensemble) {
    std::vector<ComplexMatrix> ws;
    ws.reserve(ensemble.size());
    for (const WeightedState& s : ensemble) ws.push_back(s.weighted());
    return diagonal_oracle(ws);
}

std::vector<ComplexMatrix> pgm_povm(const std::vector<ComplexMatrix>& weighted_states) {
    if (weighted_states.empty()) throw ValidationError("pgm_povm: empty ensemble");
    const int d = weighted_states.front().rows();
    ComplexMatrix s(d, d);
    for (const ComplexMatrix& a : weighted_states) s += a;

    const EigDecomposition eig = herm_eig(s);
    const double lam_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    const double cutoff = kRankCutoffRel * d * std::max(lam_max, 0.0);
    ComplexMatrix scaled = eig.eigenvectors; // columns scaled by lambda^{-1/2} on the support
    for (int c = 0; c < d; ++c) {
        const double lam = eig.eigenvalues[static_cast<std::size_t>(c)];
        const double w = lam > cutoff ? 1.0 / std::sqrt(lam) : 0.0;
        for (int r = 0; r < d; ++r) scaled(r, c) *= w;
    }
    const ComplexMatrix inv_sqrt = kernels::matmul(scaled, eig.eigenvectors.adjoint());

    std::vector<ComplexMatrix> povm;
    povm.reserve(weighted_states.size());
    for (const ComplexMatrix& a : weighted_states)
        povm.push_back(kernels::matmul(inv_sqrt, kernels::matmul(a, inv_sqrt)));
    return povm;
}

double pgm_error(const std::vector<ComplexMatrix>& weighted_states) {
    const std::vector<ComplexMatrix> povm = pgm_povm(weighted_states);
    double err = 0.0;
    for (std::size_t i = 0; i < weighted_states.size(); ++i)
        err += weighted_states[i].trace().real() -
               trace_product(weighted_states[i], povm[i]).real();
    return err;
}

double pgm_error(const std::vector<WeightedState>& ensemble) {
    std::vector<ComplexMatrix> ws;
    ws.reserve(ensemble.size());
    for (const WeightedState& s : ensemble) ws.push_back(s.weighted());
    return pgm_error(ws);
}

DualCertificate dual_feasibility(const ComplexMatrix& x,
                                 const std::vector<ComplexMatrix>& weighted_states) {
    DualCertificate cert;
    cert.feasible = true;
    double trace_sum = 0.0;
    for (const ComplexMatrix& a : weighted_states) {
        if (a.rows() != x.rows()) throw ValidationError("dual_feasibility: dimension mismatch");
        trace_sum += a.trace().real();
        ComplexMatrix diff = x;
        diff -= a;
        const std::vector<double> evs = herm_eigvals(diff);
        if (!evs.empty() && evs.front() < -1e-8) cert.feasible = false;
    }
    cert.lower_bound = trace_sum - x.trace().real();
    return cert;
}

namespace {

// Smallest m >= 1 with lambda < 2^m * lambda_min; thresholds built by exact
// doubling.
int bin_index(double lambda, double lambda_min) {
    int m = 1;
    double thr = 2.0 * lambda_min;
    while (lambda >= thr) {
        thr *= 2.0;
        ++m;
    }
    return m;
}

} // namespace

BinnedState bin_spectrum(const SpectralForm& s) {
    if (s.num_levels() == 0)
        throw ValidationError("bin_spectrum: need at least one positive eigenvalue");
    const double lam_min = s.min_eigenvalue();
    const double lam_max = s.max_eigenvalue();

    BinnedState out;
    out.original = s;
    out.bin_bound = bin_index(lam_max, lam_min);

    SpectralForm binned;
    binned.dim = s.dim;
    binned.kernel_dim = s.kernel_dim;
    // Levels are stored by decreasing value, so bins appear in decreasing m;
    // adjacent levels landing in the same bin merge.
    int current_bin = -1;
    for (const SpectralForm::Level& l : s.levels) {
        const int m = bin_index(l.value, lam_min);
        if (m == current_bin) {
            ComplexMatrix& basis = binned.levels.back().basis;
            ComplexMatrix merged(s.dim, basis.cols() + l.rank());
            for (int c = 0; c < basis.cols(); ++c)
                for (int r2 = 0; r2 < s.dim; ++r2) merged(r2, c) = basis(r2, c);
            for (int c = 0; c < l.rank(); ++c)
                for (int r2 = 0; r2 < s.dim; ++r2) merged(r2, basis.cols() + c) = l.basis(r2, c);
            basis = std::move(merged);
        } else {
            double value = lam_min;
            for (int i = 0; i < m; ++i) value *= 2.0;
            binned.levels.push_back(SpectralForm::Level{value, l.basis});
            current_bin = m;
        }
    }
    out.binned = std::move(binned);
    return out;
}

double one_shot_upper_binned_factor(int r, int l_max) {
    if (r < 2 || l_max < 1)
        throw ValidationError("one_shot_upper_binned_factor: need r >= 2, L >= 1");
    const double rl = static_cast<double>(r - 1) * l_max;
    return 40.0 * rl * rl;
}

double one_shot_upper_binned(const std::vector<SpectralForm>& forms) {
    const int r = static_cast<int>(forms.size());
    if (r < 2) throw ValidationError("one_shot_upper_binned: need r >= 2");
    int l_max = 1;
    for (const SpectralForm& f : forms) {
        if (f.num_levels() == 0) continue;
        l_max = std::max(l_max, bin_index(f.max_eigenvalue(), f.min_eigenvalue()));
    }
    return one_shot_upper_binned_factor(r, l_max) * pairwise_overlap_sum(forms);
}

double one_shot_upper_binned(const std::vector<WeightedState>& ensemble) {
    return one_shot_upper_binned(weighted_forms(ensemble));
}

} // namespace qsd
