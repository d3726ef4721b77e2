#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsd/eig.hpp"
#include "qsd/kernels.hpp"
#include "qsd/random_states.hpp"

using namespace qsd;

namespace {

ComplexMatrix reconstruct(const EigDecomposition& eig) {
    const int n = eig.eigenvectors.rows();
    ComplexMatrix lam(n, n);
    for (int i = 0; i < n; ++i) lam(i, i) = eig.eigenvalues[static_cast<std::size_t>(i)];
    return kernels::matmul(kernels::matmul(eig.eigenvectors, lam), eig.eigenvectors.adjoint());
}

// Random matrix with dyadic-rational entries (k/16); products of such
// entries are exact in double precision.
ComplexMatrix random_dyadic(int rows, int cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = cplx(rng.uniform_int(-16, 16) / 16.0, rng.uniform_int(-16, 16) / 16.0);
    return m;
}

} // namespace

TEST_CASE("herm_eig on the identity") {
    const EigDecomposition eig = herm_eig(ComplexMatrix::identity(2));
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));
    const ComplexMatrix vtv = kernels::adj_matmul(eig.eigenvectors, eig.eigenvectors);
    CHECK(frobenius_distance(vtv, ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("herm_eig on a diagonal matrix") {
    const EigDecomposition eig = herm_eig(ComplexMatrix::diagonal({0.25, 0.75}));
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.25));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.75));
}

TEST_CASE("herm_eig on the Pauli-X matrix") {
    ComplexMatrix x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const EigDecomposition eig = herm_eig(x);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(frobenius_distance(reconstruct(eig), x) < 1e-12);
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 0.5;
    CHECK_THROWS_AS(herm_eig(m), NonHermitianError);
}

TEST_CASE("herm_eig reconstruction and orthonormality on random matrices") {
    Rng rng(1001);
    for (int i = 0; i < 1000; ++i) {
        const int n = rng.uniform_int(2, 32);
        const ComplexMatrix h = random_hermitian(n, rng);
        const EigDecomposition eig = herm_eig(h);
        const double hnorm = h.frobenius_norm();
        REQUIRE(frobenius_distance(reconstruct(eig), h) <= 1e-10 * std::max(1.0, hnorm));
        const ComplexMatrix vtv = kernels::adj_matmul(eig.eigenvectors, eig.eigenvectors);
        REQUIRE(frobenius_distance(vtv, ComplexMatrix::identity(n)) <= 1e-10 * n);
        for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k)
            REQUIRE(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
    }
}

TEST_CASE("herm_eig is deterministic on identical input") {
    Rng rng(2002);
    const ComplexMatrix h = random_hermitian(13, rng);
    const EigDecomposition a = herm_eig(h);
    const EigDecomposition b = herm_eig(h);
    CHECK(bits_equal(a.eigenvectors, b.eigenvectors));
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
        CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
}

TEST_CASE("tensor_product of identities") {
    const ComplexMatrix out = tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    CHECK(frobenius_distance(out, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("tensor_product of diagonal matrices") {
    const ComplexMatrix out =
        tensor_product(ComplexMatrix::diagonal({2.0, 3.0}), ComplexMatrix::diagonal({5.0, 7.0}));
    CHECK(frobenius_distance(out, ComplexMatrix::diagonal({10.0, 14.0, 15.0, 21.0})) == 0.0);
}

TEST_CASE("tensor_product trace is multiplicative") {
    Rng rng(3003);
    for (int i = 0; i < 50; ++i) {
        ComplexMatrix a(3, 3), b(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                a(r, c) = rng.gaussian_cplx();
                b(r, c) = rng.gaussian_cplx();
            }
        const cplx direct = tensor_product(a, b).trace();
        const cplx expected = a.trace() * b.trace();
        CHECK(std::abs(direct - expected) < 1e-12 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("tensor_product is associative, exactly, on dyadic entries") {
    Rng rng(4004);
    for (int i = 0; i < 50; ++i) {
        const ComplexMatrix a = random_dyadic(2, 2, rng);
        const ComplexMatrix b = random_dyadic(3, 3, rng);
        const ComplexMatrix c = random_dyadic(2, 2, rng);
        const ComplexMatrix left = tensor_product(tensor_product(a, b), c);
        const ComplexMatrix right = tensor_product(a, tensor_product(b, c));
        REQUIRE(bits_equal(left, right));
    }
}

TEST_CASE("tensor_product enforces the dimension cap") {
    const ComplexMatrix a = ComplexMatrix::identity(64);
    CHECK_THROWS_AS(tensor_product(a, a, 4096 / 2), DimensionOverflowError);
    CHECK_NOTHROW(tensor_product(a, a));
}

TEST_CASE("trace_norm basics") {
    CHECK(trace_norm(ComplexMatrix::identity(5)) == doctest::Approx(5.0));
    CHECK(trace_norm(ComplexMatrix::diagonal({0.5, -0.5})) == doctest::Approx(1.0));
}

TEST_CASE("trace_norm dominates the absolute trace") {
    Rng rng(5005);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix h = random_hermitian(rng.uniform_int(2, 10), rng);
        CHECK(trace_norm(h) >= std::abs(h.trace().real()) - 1e-10);
    }
}
