#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsd/random_states.hpp"
#include "qsd/spectral.hpp"

using namespace qsd;

namespace {

Subspace span_of(int dim, std::initializer_list<std::vector<cplx>> vectors) {
    ComplexMatrix b(dim, static_cast<int>(vectors.size()));
    int c = 0;
    for (const auto& v : vectors) {
        for (int r = 0; r < dim; ++r) b(r, c) = v[static_cast<std::size_t>(r)];
        ++c;
    }
    return Subspace{dim, std::move(b)};
}

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

} // namespace

TEST_CASE("spectral_decompose keeps a degenerate spectrum in one level") {
    const SpectralForm f = spectral_decompose(ComplexMatrix::diagonal({0.5, 0.5}));
    REQUIRE(f.num_levels() == 1);
    CHECK(f.levels[0].value == doctest::Approx(0.5));
    CHECK(f.levels[0].rank() == 2);
    CHECK(f.kernel_dim == 0);
}

TEST_CASE("spectral_decompose splits distinct eigenvalues") {
    const SpectralForm f = spectral_decompose(ComplexMatrix::diagonal({0.75, 0.25}));
    REQUIRE(f.num_levels() == 2);
    CHECK(f.levels[0].value == doctest::Approx(0.75));
    CHECK(f.levels[1].value == doctest::Approx(0.25));
}

TEST_CASE("spectral_decompose of a pure state") {
    ComplexMatrix plus(2, 2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    const SpectralForm f = spectral_decompose(plus);
    REQUIRE(f.num_levels() == 1);
    CHECK(f.levels[0].value == doctest::Approx(1.0));
    CHECK(f.levels[0].rank() == 1);
    CHECK(f.kernel_dim == 1);
}

TEST_CASE("spectral_decompose rejects indefinite matrices") {
    CHECK_THROWS_AS(spectral_decompose(ComplexMatrix::diagonal({1.0, -0.25})), NotPsdError);
}

TEST_CASE("spectral reconstruction matches the input") {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        const int d = rng.uniform_int(2, 8);
        const ComplexMatrix a = random_density(d, rng.uniform_int(1, d), rng);
        const SpectralForm f = spectral_decompose(a);
        REQUIRE(frobenius_distance(f.dense(), a) <= 1e-8);
        REQUIRE(std::abs(f.trace() - a.trace().real()) <= 1e-8);
        for (std::size_t k = 1; k < f.levels.size(); ++k)
            REQUIRE(f.levels[k - 1].value > f.levels[k].value);
    }
}

TEST_CASE("tensor_power of a pure state stays one level") {
    ComplexMatrix pure(2, 2);
    pure(0, 0) = 1.0;
    const SpectralForm f = tensor_power(spectral_decompose(pure), 3);
    REQUIRE(f.num_levels() == 1);
    CHECK(f.levels[0].value == doctest::Approx(1.0));
    CHECK(f.levels[0].rank() == 1);
    CHECK(f.kernel_dim == 7);
}

TEST_CASE("tensor_power of a qubit spectrum enumerates the product levels") {
    const SpectralForm base = spectral_decompose(ComplexMatrix::diagonal({0.75, 0.25}));
    const SpectralForm f = tensor_power(base, 3);
    REQUIRE(f.num_levels() == 4);
    const double expected_values[] = {0.421875, 0.140625, 0.046875, 0.015625};
    const int expected_ranks[] = {1, 3, 3, 1};
    for (int k = 0; k < 4; ++k) {
        CHECK(f.levels[static_cast<std::size_t>(k)].value ==
              doctest::Approx(expected_values[k]).epsilon(1e-13));
        CHECK(f.levels[static_cast<std::size_t>(k)].rank() == expected_ranks[k]);
    }
}

TEST_CASE("tensor_power level count respects the type-counting budget") {
    Rng rng(22);
    const int n = 4;
    for (int i = 0; i < 10; ++i) {
        const SpectralForm base = spectral_decompose(random_density(3, 3, rng));
        const SpectralForm f = tensor_power(base, n);
        CHECK(f.num_levels() <= static_cast<int>(std::pow(n + 1.0, 3.0)));
    }
}

TEST_CASE("tensor_power agrees with the dense Kronecker power") {
    Rng rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const int d = rng.uniform_int(2, 3);
        const int n = d == 2 ? rng.uniform_int(2, 6) : rng.uniform_int(2, 3);
        const ComplexMatrix a = random_density(d, rng.uniform_int(1, d), rng);
        ComplexMatrix dense = a;
        for (int k = 1; k < n; ++k) dense = tensor_product(dense, a);
        const SpectralForm f = tensor_power(spectral_decompose(a), n);
        REQUIRE(frobenius_distance(f.dense(), dense) <= 1e-8);
    }
}

TEST_CASE("tensor_power merges colliding products into one level") {
    // 0.4 * 0.1 == 0.2 * 0.2, so the two middle types coincide.
    const SpectralForm base = spectral_decompose(ComplexMatrix::diagonal({0.4, 0.2, 0.1}));
    const SpectralForm f = tensor_power(base, 2);
    // products: .16, .08, .04 (twice), .02, .01 -> 5 distinct levels
    REQUIRE(f.num_levels() == 5);
    CHECK(f.levels[2].value == doctest::Approx(0.04));
    CHECK(f.levels[2].rank() == 3);
}

TEST_CASE("tensor_power honors the dimension cap") {
    const SpectralForm base = spectral_decompose(ComplexMatrix::diagonal({0.5, 0.5}));
    CHECK_THROWS_AS(tensor_power(base, 13), DimensionOverflowError);
    CHECK_NOTHROW(tensor_power(base, 12));
}

TEST_CASE("overlap of hand-built subspaces") {
    const Subspace e1 = span_of(2, {{1.0, 0.0}});
    const Subspace e2 = span_of(2, {{0.0, 1.0}});
    const Subspace diag = span_of(2, {{inv_sqrt2, inv_sqrt2}});
    CHECK(overlap(e1, e1) == doctest::Approx(1.0));
    CHECK(overlap(e1, e2) == doctest::Approx(0.0));
    CHECK(overlap(e1, diag) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(overlap(e1, Subspace::zero(2)) == 0.0);
}

TEST_CASE("overlap is symmetric") {
    Rng rng(24);
    for (int i = 0; i < 100; ++i) {
        const int d = rng.uniform_int(2, 8);
        const Subspace a = random_subspace(d, rng.uniform_int(1, d), rng);
        const Subspace b = random_subspace(d, rng.uniform_int(1, d), rng);
        CHECK(std::abs(overlap(a, b) - overlap(b, a)) <= 1e-10);
    }
}

TEST_CASE("projector special cases") {
    CHECK(projector(Subspace::zero(3)).frobenius_norm() == 0.0);

    Subspace full{3, ComplexMatrix::identity(3)};
    CHECK(frobenius_distance(projector(full), ComplexMatrix::identity(3)) == 0.0);

    const Subspace diag = span_of(2, {{inv_sqrt2, inv_sqrt2}});
    const ComplexMatrix p = projector(diag);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(p(r, c).real() == doctest::Approx(0.5));
    // idempotent and Hermitian
    CHECK(frobenius_distance(kernels::matmul(p, p), p) <= 1e-10);
    CHECK(hermiticity_residual(p) <= 1e-10);
}

TEST_CASE("orthonormalize_columns drops dependent directions") {
    ComplexMatrix cols(3, 3);
    cols(0, 0) = 1.0;
    cols(0, 1) = 2.0; // same direction
    cols(1, 2) = 5.0;
    const ComplexMatrix q = orthonormalize_columns(cols);
    REQUIRE(q.cols() == 2);
    CHECK(frobenius_distance(kernels::adj_matmul(q, q), ComplexMatrix::identity(2)) <= 1e-12);
}
