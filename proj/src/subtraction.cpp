#include "qsd/subtraction.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "qsd/eig.hpp"

namespace qsd {

SubtractionResult eps_subtract(const Subspace& s1, const Subspace& s2, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw InvalidEpsilonError("eps_subtract: eps must lie in [0,1], got " + std::to_string(eps));
    if (s1.ambient_dim != s2.ambient_dim)
        throw ValidationError("eps_subtract: ambient dimensions differ");

    SubtractionResult res;
    if (s1.rank() == 0) {
        res.reduced = Subspace::zero(s1.ambient_dim);
        return res;
    }
    if (s2.rank() == 0) {
        res.reduced = s1;
        return res;
    }

    // P1 P2 P1 restricted to s1's coordinates: (B1^d B2)(B2^d B1).
    const ComplexMatrix m = kernels::adj_matmul(s1.basis, s2.basis); // r1 x r2
    const ComplexMatrix c = kernels::matmul(m, m.adjoint());         // r1 x r1, PSD
    const EigDecomposition eig = herm_eig(c);

    const double lam_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    const double zero_cutoff =
        std::max(kRankCutoffRel * s1.rank() * std::max(lam_max, 0.0), DBL_MIN);

    std::vector<int> kept;
    for (int i = 0; i < s1.rank(); ++i) {
        const double lam = eig.eigenvalues[static_cast<std::size_t>(i)];
        const bool removed = lam >= zero_cutoff && lam >= eps * eps - 1e-12;
        if (removed)
            res.eigenvalues_removed.push_back(lam);
        else
            kept.push_back(i);
    }
    std::sort(res.eigenvalues_removed.rbegin(), res.eigenvalues_removed.rend());
    res.removed_rank = s1.rank() - static_cast<int>(kept.size());

    ComplexMatrix w(s1.rank(), static_cast<int>(kept.size()));
    for (std::size_t c2 = 0; c2 < kept.size(); ++c2)
        for (int r = 0; r < s1.rank(); ++r) w(r, static_cast<int>(c2)) = eig.eigenvectors(r, kept[c2]);
    res.reduced = Subspace{s1.ambient_dim, kernels::matmul(s1.basis, w)};
    return res;
}

namespace {

void require_orthogonal_family(const std::vector<Subspace>& parts, const char* which) {
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (parts[i].rank() == 0 || parts[j].rank() == 0) continue;
            const ComplexMatrix g = kernels::adj_matmul(parts[i].basis, parts[j].basis);
            if (g.frobenius_norm() > 1e-8)
                throw PreconditionViolatedError(std::string("check_lemma2: parts of ") + which +
                                                " are not mutually orthogonal");
        }
}

Subspace direct_sum(const std::vector<Subspace>& parts) {
    if (parts.empty()) throw ValidationError("direct_sum: empty family");
    const int d = parts.front().ambient_dim;
    int total = 0;
    for (const Subspace& p : parts) {
        if (p.ambient_dim != d) throw ValidationError("direct_sum: ambient dimensions differ");
        total += p.rank();
    }
    ComplexMatrix b(d, total);
    int col = 0;
    for (const Subspace& p : parts)
        for (int c = 0; c < p.rank(); ++c, ++col)
            for (int r = 0; r < d; ++r) b(r, col) = p.basis(r, c);
    return Subspace{d, std::move(b)};
}

} // namespace

double check_lemma2(const std::vector<Subspace>& v_parts, const std::vector<Subspace>& w_parts,
                    double delta) {
    if (v_parts.empty() || w_parts.empty())
        throw ValidationError("check_lemma2: empty part list");
    require_orthogonal_family(v_parts, "V");
    require_orthogonal_family(w_parts, "W");
    for (const Subspace& v : v_parts)
        for (const Subspace& w : w_parts)
            if (overlap(v, w) > delta + 1e-12)
                throw PreconditionViolatedError("check_lemma2: a pairwise overlap exceeds delta");
    return overlap(direct_sum(v_parts), direct_sum(w_parts));
}

ComplexMatrix check_lemma3(const std::vector<Subspace>& subspaces, double delta) {
    const int r = static_cast<int>(subspaces.size());
    if (r < 2) throw ValidationError("check_lemma3: need at least two subspaces");
    if (delta >= 1.0 / (2.0 * (r - 1)))
        throw DeltaTooLargeError("check_lemma3: delta " + std::to_string(delta) +
                                 " is not below 1/(2(r-1)) = " +
                                 std::to_string(1.0 / (2.0 * (r - 1))));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (overlap(subspaces[static_cast<std::size_t>(i)], subspaces[static_cast<std::size_t>(j)]) > delta + 1e-12)
                throw PreconditionViolatedError("check_lemma3: a pairwise overlap exceeds delta");

    const int d = subspaces.front().ambient_dim;
    ComplexMatrix sum_proj(d, d);
    for (const Subspace& s : subspaces) sum_proj += projector(s);

    const Subspace stacked = direct_sum(subspaces);
    const Subspace span{d, orthonormalize_columns(stacked.basis)};

    const double factor = (1.0 - (r - 1) * delta) / (1.0 - 2.0 * (r - 1) * delta);
    ComplexMatrix out = factor * sum_proj;
    out -= projector(span);
    return out;
}

} // namespace qsd
