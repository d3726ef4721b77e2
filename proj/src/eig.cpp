#include "qsd/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsd {
namespace {

// Off-diagonal Frobenius norm tolerance, relative to ||H||_F.
constexpr double kOffDiagTolRel = 1e-12;
constexpr int kMaxSweeps = 100;

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

// One cyclic sweep of complex Jacobi rotations over the strict upper
// triangle in row-major order. Rotations with |a_pq| at or below skip_tol
// are skipped; this guarantees termination once the off-diagonal mass is
// negligible. V may be null (eigenvalues-only mode).
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v, double skip_tol) {
    const int n = a.rows();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const cplx apq = a(p, q);
            const double mag = std::abs(apq);
            if (mag <= skip_tol) continue;

            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const double theta = (aqq - app) / (2.0 * mag);
            const double t =
                (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            const cplx phase_conj = std::conj(apq / mag); // e^{-i arg(a_pq)}

            for (int r = 0; r < n; ++r) {
                if (r == p || r == q) continue;
                const cplx arp = a(r, p);
                const cplx arq = a(r, q);
                a(r, p) = c * arp - s * phase_conj * arq;
                a(r, q) = s * arp + c * phase_conj * arq;
                a(p, r) = std::conj(a(r, p));
                a(q, r) = std::conj(a(r, q));
            }
            // Exact 2x2 block update; keeps the diagonal real and the
            // rotated off-diagonal entry exactly zero.
            a(p, p) = cplx(app - t * mag, 0.0);
            a(q, q) = cplx(aqq + t * mag, 0.0);
            a(p, q) = cplx(0.0, 0.0);
            a(q, p) = cplx(0.0, 0.0);

            if (v != nullptr) {
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = (*v)(r, p);
                    const cplx vrq = (*v)(r, q);
                    (*v)(r, p) = c * vrp - s * phase_conj * vrq;
                    (*v)(r, q) = s * vrp + c * phase_conj * vrq;
                }
            }
        }
    }
}

// Shared driver; fills eigenvalues ascending and permutes V to match.
EigDecomposition jacobi_driver(const ComplexMatrix& h, bool want_vectors) {
    if (!h.is_square()) throw ValidationError("herm_eig expects a square matrix");
    if (!h.all_finite()) throw ValidationError("herm_eig: non-finite entries");

    const int n = h.rows();
    const double hnorm = h.frobenius_norm();
    if (hermiticity_residual(h) > 1e-9 * std::max(1.0, hnorm))
        throw NonHermitianError("herm_eig: input is not Hermitian within tolerance");

    // Work on the exactly Hermitian part; removes any sub-tolerance skew.
    ComplexMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
        a(r, r) = cplx(a(r, r).real(), 0.0);
    }

    ComplexMatrix v;
    if (want_vectors) v = ComplexMatrix::identity(n);

    const double off_tol = kOffDiagTolRel * hnorm;
    const double skip_tol = off_tol / (16.0 * double(n) * double(n) + 1.0);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_norm(a) <= off_tol) {
            converged = true;
            break;
        }
        jacobi_sweep(a, want_vectors ? &v : nullptr, skip_tol);
    }
    if (!converged && offdiag_norm(a) > off_tol)
        throw NoConvergenceError("herm_eig: off-diagonal norm above tolerance after " +
                                 std::to_string(kMaxSweeps) + " sweeps");

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&a](int x, int y) { return a(x, x).real() < a(y, y).real(); });

    EigDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.eigenvalues[static_cast<std::size_t>(i)] = a(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i)]).real();
    if (want_vectors) {
        out.eigenvectors = ComplexMatrix(n, n);
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, perm[static_cast<std::size_t>(c)]);
    }
    return out;
}

} // namespace

EigDecomposition herm_eig(const ComplexMatrix& h) { return jacobi_driver(h, true); }

std::vector<double> herm_eigvals(const ComplexMatrix& h) {
    return jacobi_driver(h, false).eigenvalues;
}

double trace_norm(const ComplexMatrix& h) {
    double s = 0.0;
    for (double ev : herm_eigvals(h)) s += std::abs(ev);
    return s;
}

} // namespace qsd
