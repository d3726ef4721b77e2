#pragma once

#include <complex>
#include <vector>

#include "qsd/errors.hpp"

namespace qsd {

using cplx = std::complex<double>;

/// Dense matrix of complex doubles, row-major. Square in most of the
/// library; rectangular instances carry subspace bases (one orthonormal
/// column per basis vector).
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw ValidationError("matrix dimensions must be nonnegative");
        a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx(0.0, 0.0));
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(int r, int c) { return a_[idx(r, c)]; }
    const cplx& operator()(int r, int c) const { return a_[idx(r, c)]; }

    cplx* row_ptr(int r) { return a_.data() + idx(r, 0); }
    const cplx* row_ptr(int r) const { return a_.data() + idx(r, 0); }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix column(int c) const;

    cplx trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);
    ComplexMatrix& operator*=(double s) { return (*this) *= cplx(s, 0.0); }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }

    bool operator==(const ComplexMatrix& o) const = default;

private:
    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

/// Frobenius norm of a - b without materializing the difference.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||H - H^dagger||_F; zero for exactly Hermitian input.
double hermiticity_residual(const ComplexMatrix& h);

/// tr(A B) in O(rows*cols); avoids the full product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Bitwise comparison, distinguishing -0.0 from 0.0. Used by the
/// determinism tests; operator== is plain value equality.
bool bits_equal(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace qsd
