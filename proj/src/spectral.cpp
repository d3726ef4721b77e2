#include "qsd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qsd/eig.hpp"

namespace qsd {

void WeightedState::validate() const {
    if (!(prior > 0.0) || prior > 1.0)
        throw ValidationError("prior must lie in (0, 1], got " + std::to_string(prior));
    if (!state.is_square()) throw ValidationError("state matrix must be square");
    if (!state.all_finite()) throw ValidationError("state matrix has non-finite entries");
    if (hermiticity_residual(state) > 1e-9 * std::max(1.0, state.frobenius_norm()))
        throw ValidationError("state matrix is not Hermitian within tolerance");
    const std::vector<double> evs = herm_eigvals(state);
    const double lam_max = evs.empty() ? 0.0 : evs.back();
    const double lam_min = evs.empty() ? 0.0 : evs.front();
    if (lam_min < -1e-9 * std::max(1.0, lam_max))
        throw NotPsdError("NotPSD: minimum eigenvalue " + std::to_string(lam_min));
    if (normalized && std::abs(state.trace().real() - 1.0) > 1e-9)
        throw ValidationError("normalized state must have unit trace, got trace " +
                              std::to_string(state.trace().real()));
}

int SpectralForm::support_rank() const {
    int r = 0;
    for (const Level& l : levels) r += l.rank();
    return r;
}

double SpectralForm::trace() const {
    double t = 0.0;
    for (const Level& l : levels) t += l.value * l.rank();
    return t;
}

ComplexMatrix SpectralForm::dense() const {
    ComplexMatrix out(dim, dim);
    for (const Level& l : levels) {
        const ComplexMatrix p = kernels::matmul(l.basis, l.basis.adjoint());
        for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += l.value * p.data()[i];
    }
    return out;
}

SpectralForm SpectralForm::scaled(double w) const {
    if (!(w > 0.0)) throw ValidationError("scale factor must be positive");
    SpectralForm out = *this;
    for (Level& l : out.levels) l.value *= w;
    return out;
}

SpectralForm spectral_decompose(const ComplexMatrix& a, double cluster_tol) {
    if (!a.is_square()) throw ValidationError("spectral_decompose expects a square matrix");
    const int n = a.rows();
    EigDecomposition eig = herm_eig(a);

    const double lam_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    const double rank_cutoff = kRankCutoffRel * n * std::max(lam_max, 0.0);
    const double gap_tol = cluster_tol * std::max(lam_max, 0.0);

    SpectralForm form;
    form.dim = n;

    // Walk the spectrum from the top, merging eigenvalues separated by at
    // most gap_tol into one level.
    int hi = n - 1;
    while (hi >= 0) {
        int lo = hi;
        while (lo - 1 >= 0 &&
               eig.eigenvalues[static_cast<std::size_t>(lo)] - eig.eigenvalues[static_cast<std::size_t>(lo - 1)] <= gap_tol)
            --lo;
        double sum = 0.0;
        for (int i = hi; i >= lo; --i) sum += eig.eigenvalues[static_cast<std::size_t>(i)];
        const int count = hi - lo + 1;
        const double rep = sum / count;

        if (rep < -rank_cutoff)
            throw NotPsdError("NotPSD: clustered eigenvalue " + std::to_string(rep));
        if (rep > rank_cutoff) {
            SpectralForm::Level level;
            level.value = rep;
            level.basis = ComplexMatrix(n, count);
            for (int c = 0; c < count; ++c)
                for (int r = 0; r < n; ++r) level.basis(r, c) = eig.eigenvectors(r, lo + c);
            form.levels.push_back(std::move(level));
        } else {
            form.kernel_dim += count;
        }
        hi = lo - 1;
    }
    return form;
}

namespace {

// All multisets of n picks from t base levels, as exponent vectors in a
// fixed recursive order.
void enumerate_exponents(int t, int n, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == t - 1) {
        cur.push_back(n);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int m = n; m >= 0; --m) {
        cur.push_back(m);
        enumerate_exponents(t, n - m, cur, out);
        cur.pop_back();
    }
}

ComplexMatrix kron_column_chain(const SpectralForm& s, const std::vector<int>& seq,
                                const std::vector<int>& cols) {
    ComplexMatrix v = s.levels[static_cast<std::size_t>(seq[0])].basis.column(cols[0]);
    for (std::size_t t = 1; t < seq.size(); ++t)
        v = kernels::kron(v, s.levels[static_cast<std::size_t>(seq[t])].basis.column(cols[static_cast<std::size_t>(t)]));
    return v;
}

} // namespace

SpectralForm tensor_power(const SpectralForm& s, int n, int dim_cap, double cluster_tol) {
    if (n < 1) throw ValidationError("tensor_power: n must be a positive integer");
    if (s.dim < 1) throw ValidationError("tensor_power: empty base form");

    double dim_check = 1.0;
    long long big_dim = 1;
    for (int i = 0; i < n; ++i) {
        dim_check *= s.dim;
        if (dim_check > static_cast<double>(dim_cap))
            throw DimensionOverflowError("tensor_power: dim " + std::to_string(s.dim) + "^" +
                                         std::to_string(n) + " exceeds cap " +
                                         std::to_string(dim_cap));
        big_dim *= s.dim;
    }
    if (n == 1) return s;

    const int t = s.num_levels();
    SpectralForm out;
    out.dim = static_cast<int>(big_dim);
    if (t == 0) {
        out.kernel_dim = out.dim;
        return out;
    }

    // Candidate levels, one per exponent vector over the base levels. The
    // product eigenvalue is computed in a canonical order so equal types
    // always yield bit-identical values.
    std::vector<std::vector<int>> expos;
    {
        std::vector<int> cur;
        enumerate_exponents(t, n, cur, expos);
    }
    struct Candidate {
        double value;
        long long rank;
        int expo_index;
    };
    std::vector<Candidate> cands;
    cands.reserve(expos.size());
    for (std::size_t e = 0; e < expos.size(); ++e) {
        double val = 1.0;
        for (int k = 0; k < t; ++k)
            for (int rep = 0; rep < expos[e][static_cast<std::size_t>(k)]; ++rep)
                val *= s.levels[static_cast<std::size_t>(k)].value;
        // multinomial(n; m) * prod rank_k^{m_k}
        long long rank = 1;
        {
            int placed = 0;
            for (int k = 0; k < t; ++k) {
                const int mk = expos[e][static_cast<std::size_t>(k)];
                for (int j = 1; j <= mk; ++j) {
                    rank = rank * (placed + j) / j; // binomial build-up, exact
                }
                placed += mk;
                for (int j = 0; j < mk; ++j) rank *= s.levels[static_cast<std::size_t>(k)].rank();
            }
        }
        cands.push_back(Candidate{val, rank, static_cast<int>(e)});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

    // Bucket every base-level sequence by its exponent vector, so level
    // bases can be emitted sequence by sequence in lexicographic order.
    std::map<std::vector<int>, std::vector<std::vector<int>>> seqs_by_type;
    {
        std::vector<int> seq(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<int> expo(static_cast<std::size_t>(t), 0);
            for (int i = 0; i < n; ++i) expo[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])]++;
            seqs_by_type[expo].push_back(seq);
            int pos = n - 1;
            while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == t - 1) {
                seq[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            seq[static_cast<std::size_t>(pos)]++;
        }
    }

    const double gap_tol = cluster_tol * cands.front().value;
    std::size_t i = 0;
    while (i < cands.size()) {
        std::size_t j = i;
        while (j + 1 < cands.size() && cands[j].value - cands[j + 1].value <= gap_tol) ++j;

        long long level_rank = 0;
        double weighted_sum = 0.0;
        for (std::size_t k = i; k <= j; ++k) {
            level_rank += cands[k].rank;
            weighted_sum += cands[k].value * static_cast<double>(cands[k].rank);
        }

        SpectralForm::Level level;
        level.value = weighted_sum / static_cast<double>(level_rank);
        level.basis = ComplexMatrix(out.dim, static_cast<int>(level_rank));
        int col = 0;
        for (std::size_t k = i; k <= j; ++k) {
            const std::vector<int>& expo = expos[static_cast<std::size_t>(cands[k].expo_index)];
            for (const std::vector<int>& seq : seqs_by_type.at(expo)) {
                // enumerate per-copy basis columns lexicographically
                std::vector<int> cols(static_cast<std::size_t>(n), 0);
                while (true) {
                    const ComplexMatrix v = kron_column_chain(s, seq, cols);
                    for (int r = 0; r < out.dim; ++r) level.basis(r, col) = v(r, 0);
                    ++col;
                    int pos = n - 1;
                    while (pos >= 0 &&
                           cols[static_cast<std::size_t>(pos)] ==
                               s.levels[static_cast<std::size_t>(seq[static_cast<std::size_t>(pos)])].rank() - 1) {
                        cols[static_cast<std::size_t>(pos)] = 0;
                        --pos;
                    }
                    if (pos < 0) break;
                    cols[static_cast<std::size_t>(pos)]++;
                }
            }
        }
        out.levels.push_back(std::move(level));
        i = j + 1;
    }

    long long support = 0;
    for (const SpectralForm::Level& l : out.levels) support += l.rank();
    out.kernel_dim = static_cast<int>(big_dim - support);
    return out;
}

double overlap(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim != s2.ambient_dim)
        throw ValidationError("overlap: ambient dimensions differ");
    if (s1.rank() == 0 || s2.rank() == 0) return 0.0;
    const ComplexMatrix m = kernels::adj_matmul(s1.basis, s2.basis);
    const ComplexMatrix g = kernels::adj_matmul(m, m); // m^dagger m, PSD
    const std::vector<double> evs = herm_eigvals(g);
    const double top = evs.empty() ? 0.0 : evs.back();
    return std::min(1.0, std::sqrt(std::max(0.0, top)));
}

ComplexMatrix projector(const Subspace& s) {
    if (s.rank() == 0) return ComplexMatrix(s.ambient_dim, s.ambient_dim);
    return kernels::matmul(s.basis, s.basis.adjoint());
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& cols, double drop_tol) {
    const int d = cols.rows();
    ComplexMatrix acc(d, cols.cols());
    int kept = 0;
    std::vector<cplx> v(static_cast<std::size_t>(d));
    for (int c = 0; c < cols.cols(); ++c) {
        for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] = cols(r, c);
        for (int pass = 0; pass < 2; ++pass) {
            for (int u = 0; u < kept; ++u) {
                cplx proj(0.0, 0.0);
                for (int r = 0; r < d; ++r) proj += std::conj(acc(r, u)) * v[static_cast<std::size_t>(r)];
                for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] -= proj * acc(r, u);
            }
        }
        double nrm = 0.0;
        for (int r = 0; r < d; ++r) nrm += std::norm(v[static_cast<std::size_t>(r)]);
        nrm = std::sqrt(nrm);
        if (nrm < drop_tol) continue;
        for (int r = 0; r < d; ++r) acc(r, kept) = v[static_cast<std::size_t>(r)] / nrm;
        ++kept;
    }
    ComplexMatrix out(d, kept);
    for (int c = 0; c < kept; ++c)
        for (int r = 0; r < d; ++r) out(r, c) = acc(r, c);
    return out;
}

} // namespace qsd
