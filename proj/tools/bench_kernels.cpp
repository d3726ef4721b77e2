// Timing comparison of the serial reference kernels against the OpenMP
// variants, plus a bit-identity check on every measured case.

#include <chrono>
#include <cstdio>
#include <functional>

#include "qsd/bounds.hpp"
#include "qsd/kernels.hpp"
#include "qsd/random_states.hpp"

using qsd::ComplexMatrix;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* op, int size, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-12s %5d   serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n", op,
                size, serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
    qsd::Rng rng(7);
    std::printf("kernel          dim     serial            parallel           speedup\n");

    for (int n : {64, 128, 256, 384}) {
        ComplexMatrix a(n, n), b(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                a(r, c) = rng.gaussian_cplx();
                b(r, c) = rng.gaussian_cplx();
            }
        const int reps = n <= 128 ? 8 : 3;

        ComplexMatrix s = qsd::kernels::matmul_serial(a, b);
        ComplexMatrix p = qsd::kernels::matmul(a, b);
        report("matmul", n, time_ms([&] { qsd::kernels::matmul_serial(a, b); }, reps),
               time_ms([&] { qsd::kernels::matmul(a, b); }, reps), qsd::bits_equal(s, p));

        s = qsd::kernels::adj_matmul_serial(a, b);
        p = qsd::kernels::adj_matmul(a, b);
        report("adj_matmul", n, time_ms([&] { qsd::kernels::adj_matmul_serial(a, b); }, reps),
               time_ms([&] { qsd::kernels::adj_matmul(a, b); }, reps), qsd::bits_equal(s, p));
    }

    for (int n : {32, 48, 64}) {
        ComplexMatrix a(n, n), b(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                a(r, c) = rng.gaussian_cplx();
                b(r, c) = rng.gaussian_cplx();
            }
        ComplexMatrix s = qsd::kernels::kron_serial(a, b);
        ComplexMatrix p = qsd::kernels::kron(a, b);
        report("kron", n, time_ms([&] { qsd::kernels::kron_serial(a, b); }, 3),
               time_ms([&] { qsd::kernels::kron(a, b); }, 3), qsd::bits_equal(s, p));
    }

    // Pairwise overlap sums: parallel over state pairs, ordered reduction.
    for (int r : {3, 4, 6}) {
        std::vector<qsd::SpectralForm> forms;
        for (int i = 0; i < r; ++i)
            forms.push_back(qsd::spectral_decompose(qsd::random_density(48, 48, rng)));
        const double serial_ms =
            time_ms([&] { qsd::pairwise_overlap_sum_serial(forms); }, 3);
        const double parallel_ms = time_ms([&] { qsd::pairwise_overlap_sum(forms); }, 3);
        const bool same =
            qsd::pairwise_overlap_sum_serial(forms) == qsd::pairwise_overlap_sum(forms);
        report("overlap_sum", r, serial_ms, parallel_ms, same);
    }
    return 0;
}
