#include "qsd/random_states.hpp"

#include <cmath>

#include "qsd/kernels.hpp"

namespace qsd {

ComplexMatrix random_unitary(int dim, Rng& rng) {
    ComplexMatrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = rng.gaussian_cplx();
    ComplexMatrix q = orthonormalize_columns(g, 1e-8);
    // A Gaussian draw is singular with probability zero; retry on the
    // measure-zero event rather than return a rank-deficient frame.
    while (q.cols() < dim) {
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) g(r, c) = rng.gaussian_cplx();
        q = orthonormalize_columns(g, 1e-8);
    }
    return q;
}

Subspace random_subspace(int dim, int rank, Rng& rng) {
    if (rank < 0 || rank > dim) throw ValidationError("random_subspace: rank out of range");
    const ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix b(dim, rank);
    for (int c = 0; c < rank; ++c)
        for (int r = 0; r < dim; ++r) b(r, c) = u(r, c);
    return Subspace{dim, std::move(b)};
}

ComplexMatrix random_density(int dim, int rank, Rng& rng, double eig_floor) {
    if (rank < 1 || rank > dim) throw ValidationError("random_density: rank out of range");
    std::vector<double> vals(static_cast<std::size_t>(rank));
    double sum = 0.0;
    for (double& v : vals) {
        v = eig_floor + rng.uniform();
        sum += v;
    }
    for (double& v : vals) v /= sum;

    const ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix rho(dim, dim);
    for (int k = 0; k < rank; ++k)
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                rho(r, c) += vals[static_cast<std::size_t>(k)] * u(r, k) * std::conj(u(c, k));
    return rho;
}

ComplexMatrix random_hermitian(int dim, Rng& rng) {
    ComplexMatrix h(dim, dim);
    for (int r = 0; r < dim; ++r) {
        h(r, r) = cplx(rng.gaussian(), 0.0);
        for (int c = r + 1; c < dim; ++c) {
            const cplx v = rng.gaussian_cplx();
            h(r, c) = v;
            h(c, r) = std::conj(v);
        }
    }
    return h;
}

std::vector<WeightedState> random_ensemble(int r, int dim, Rng& rng, bool allow_rank_deficient,
                                           double prior_floor, double eig_floor) {
    std::vector<double> priors(static_cast<std::size_t>(r));
    double sum = 0.0;
    for (double& p : priors) {
        p = prior_floor + rng.uniform();
        sum += p;
    }
    for (double& p : priors) p /= sum;

    std::vector<WeightedState> ensemble;
    ensemble.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        const int rank = allow_rank_deficient ? rng.uniform_int(1, dim) : dim;
        ensemble.push_back(WeightedState{priors[static_cast<std::size_t>(i)],
                                         random_density(dim, rank, rng, eig_floor), true});
    }
    return ensemble;
}

} // namespace qsd
