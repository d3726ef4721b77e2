#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsd/bounds.hpp"
#include "qsd/kernels.hpp"
#include "qsd/random_states.hpp"

using namespace qsd;

namespace {

ComplexMatrix random_matrix(int rows, int cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.gaussian_cplx();
    return m;
}

} // namespace

TEST_CASE("parallel matmul matches the serial reference bit for bit") {
    Rng rng(11);
    for (auto [ra, ca, cb] : {std::tuple{3, 5, 4}, {64, 64, 64}, {130, 70, 90}, {257, 257, 257}}) {
        const ComplexMatrix a = random_matrix(ra, ca, rng);
        const ComplexMatrix b = random_matrix(ca, cb, rng);
        REQUIRE(bits_equal(kernels::matmul_serial(a, b), kernels::matmul(a, b)));
    }
}

TEST_CASE("parallel adj_matmul matches the serial reference bit for bit") {
    Rng rng(12);
    for (auto [ra, ca, cb] : {std::tuple{5, 3, 4}, {64, 64, 64}, {150, 80, 60}}) {
        const ComplexMatrix a = random_matrix(ra, ca, rng);
        const ComplexMatrix b = random_matrix(ra, cb, rng);
        const ComplexMatrix fast = kernels::adj_matmul(a, b);
        REQUIRE(bits_equal(kernels::adj_matmul_serial(a, b), fast));
        // agrees with the two-step evaluation up to rounding in the adjoint path
        CHECK(frobenius_distance(fast, kernels::matmul_serial(a.adjoint(), b)) == 0.0);
    }
}

TEST_CASE("parallel kron matches the serial reference bit for bit") {
    Rng rng(13);
    for (auto [na, nb] : {std::pair{2, 3}, {17, 11}, {64, 64}}) {
        const ComplexMatrix a = random_matrix(na, na, rng);
        const ComplexMatrix b = random_matrix(nb, nb, rng);
        REQUIRE(bits_equal(kernels::kron_serial(a, b), kernels::kron(a, b)));
    }
}

TEST_CASE("kron block structure") {
    ComplexMatrix a(2, 2);
    a(0, 0) = cplx(1.0, 1.0);
    a(0, 1) = 2.0;
    a(1, 0) = 3.0;
    a(1, 1) = cplx(0.0, -1.0);
    ComplexMatrix b(2, 2);
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    const ComplexMatrix k = kernels::kron(a, b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    CHECK(k(2 * i + x, 2 * j + y) == a(i, j) * b(x, y));
}

TEST_CASE("pairwise overlap sum: parallel equals serial bit for bit") {
    Rng rng(14);
    for (int r : {2, 3, 5}) {
        std::vector<SpectralForm> forms;
        for (int i = 0; i < r; ++i)
            forms.push_back(spectral_decompose(random_density(6, rng.uniform_int(1, 6), rng)));
        REQUIRE(pairwise_overlap_sum(forms) == pairwise_overlap_sum_serial(forms));
    }
}
