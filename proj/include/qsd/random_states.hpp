#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qsd/spectral.hpp"

namespace qsd {

/// Seeded random source with hand-rolled uniform and Gaussian transforms on
/// top of mt19937_64, so a seed pins the exact byte stream everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int v = lo + static_cast<int>(uniform() * span);
        return v > hi ? hi : v;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // keep away from log(0)
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx gaussian_cplx() {
        const double re = gaussian();
        const double im = gaussian();
        return cplx(re, im);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-like random unitary: Gaussian matrix orthonormalized column by
/// column.
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Random subspace of the given rank (first columns of a random unitary).
Subspace random_subspace(int dim, int rank, Rng& rng);

/// Random density matrix of the given rank. Nonzero eigenvalues are drawn
/// as eig_floor + uniform and normalized, which keeps the spectrum bounded
/// away from zero on the support.
ComplexMatrix random_density(int dim, int rank, Rng& rng, double eig_floor = 0.1);

/// Random Hermitian matrix with independent Gaussian entries.
ComplexMatrix random_hermitian(int dim, Rng& rng);

/// Ensemble of r random states on dim dimensions with random ranks and a
/// random prior vector (each prior at least prior_floor before
/// normalization).
std::vector<WeightedState> random_ensemble(int r, int dim, Rng& rng, bool allow_rank_deficient = true,
                                           double prior_floor = 0.2, double eig_floor = 0.1);

} // namespace qsd
