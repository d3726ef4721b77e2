#include "qsd/kernels.hpp"

namespace qsd {
namespace kernels {
namespace {

// Below this many scalar multiply-adds the fork/join overhead dominates.
constexpr double kParallelCutoff = 1 << 15;

void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c, int i) {
    const int inner = a.cols();
    const int m = b.cols();
    cplx* crow = c.row_ptr(i);
    const cplx* arow = a.row_ptr(i);
    for (int k = 0; k < inner; ++k) {
        const cplx aik = arow[k];
        const cplx* brow = b.row_ptr(k);
        for (int j = 0; j < m; ++j) crow[j] += aik * brow[j];
    }
}

void adj_matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c, int i) {
    const int inner = a.rows();
    const int m = b.cols();
    cplx* crow = c.row_ptr(i);
    for (int k = 0; k < inner; ++k) {
        const cplx aki = std::conj(a(k, i));
        const cplx* brow = b.row_ptr(k);
        for (int j = 0; j < m; ++j) crow[j] += aki * brow[j];
    }
}

void kron_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c, int r) {
    const int i = r / b.rows();
    const int k = r % b.rows();
    cplx* crow = c.row_ptr(r);
    const cplx* arow = a.row_ptr(i);
    const cplx* brow = b.row_ptr(k);
    for (int j = 0; j < a.cols(); ++j) {
        const cplx aij = arow[j];
        cplx* block = crow + static_cast<std::size_t>(j) * b.cols();
        for (int l = 0; l < b.cols(); ++l) block[l] = aij * brow[l];
    }
}

void check_matmul_shapes(const ComplexMatrix& a, const ComplexMatrix& b, int inner_a) {
    if (inner_a != b.rows()) throw ValidationError("matmul inner dimension mismatch");
}

} // namespace

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_matmul_shapes(a, b, a.cols());
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
    return c;
}

ComplexMatrix adj_matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_matmul_shapes(a, b, a.rows());
    ComplexMatrix c(a.cols(), b.cols());
    for (int i = 0; i < a.cols(); ++i) adj_matmul_row(a, b, c, i);
    return c;
}

ComplexMatrix kron_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int r = 0; r < c.rows(); ++r) kron_row(a, b, c, r);
    return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_matmul_shapes(a, b, a.cols());
    ComplexMatrix c(a.rows(), b.cols());
    const double work = double(a.rows()) * double(a.cols()) * double(b.cols());
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
    for (int i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
    return c;
}

ComplexMatrix adj_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_matmul_shapes(a, b, a.rows());
    ComplexMatrix c(a.cols(), b.cols());
    const double work = double(a.cols()) * double(a.rows()) * double(b.cols());
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
    for (int i = 0; i < a.cols(); ++i) adj_matmul_row(a, b, c, i);
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    const double work = double(c.rows()) * double(c.cols());
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
    for (int r = 0; r < c.rows(); ++r) kron_row(a, b, c, r);
    return c;
}

} // namespace kernels

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b, int dim_cap) {
    if (!a.is_square() || !b.is_square())
        throw ValidationError("tensor_product expects square matrices");
    if (!a.all_finite() || !b.all_finite())
        throw ValidationError("tensor_product: non-finite entries");
    const long long dim = static_cast<long long>(a.rows()) * b.rows();
    if (dim > dim_cap)
        throw DimensionOverflowError("tensor_product: result dimension " + std::to_string(dim) +
                                     " exceeds cap " + std::to_string(dim_cap));
    return kernels::kron(a, b);
}

} // namespace qsd
