#include "qsd/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "qsd/eig.hpp"

namespace qsd {

OrderingMap order_eigenvalues(const std::vector<SpectralForm>& forms) {
    if (forms.size() < 2) throw ValidationError("order_eigenvalues: need at least two states");

    struct Entry {
        double value;
        LevelKey key;
    };
    std::vector<Entry> entries;
    for (int i = 0; i < static_cast<int>(forms.size()); ++i)
        for (int k = 0; k < forms[static_cast<std::size_t>(i)].num_levels(); ++k)
            entries.push_back({forms[static_cast<std::size_t>(i)].levels[static_cast<std::size_t>(k)].value, {i, k}});

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.key.state != b.key.state) return a.key.state < b.key.state;
        return a.key.level < b.key.level;
    });

    OrderingMap order;
    order.seq.reserve(entries.size() + 1);
    order.seq.push_back(LevelKey{-1, -1});
    for (const Entry& e : entries) order.seq.push_back(e.key);
    return order;
}

ComplexMatrix DugEnsemble::approx_state(const std::vector<SpectralForm>& forms, int i) const {
    const SpectralForm& f = forms[static_cast<std::size_t>(i)];
    ComplexMatrix out(dim, dim);
    for (int k = 0; k < f.num_levels(); ++k) {
        const int m = position[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        const ComplexMatrix p = projector(reduced[static_cast<std::size_t>(m)]);
        const double lam = f.levels[static_cast<std::size_t>(k)].value;
        for (std::size_t e = 0; e < out.data().size(); ++e) out.data()[e] += lam * p.data()[e];
    }
    return out;
}

DugEnsemble dig_eigenspaces(const std::vector<SpectralForm>& forms, const OrderingMap& ordering,
                            double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidEpsilonError("dig_eigenspaces: eps must lie in (0,1)");

    DugEnsemble dug;
    dug.dim = forms.front().dim;
    dug.epsilon = eps;
    dug.ordering = ordering;
    dug.reduced.resize(ordering.seq.size());
    dug.reduced[0] = Subspace::zero(dug.dim);
    dug.position.resize(forms.size());
    for (std::size_t i = 0; i < forms.size(); ++i)
        dug.position[i].assign(static_cast<std::size_t>(forms[i].num_levels()), 0);

    for (int m = 1; m <= ordering.size(); ++m) {
        const LevelKey key = ordering.at(m);
        Subspace cur = forms[static_cast<std::size_t>(key.state)].level_subspace(key.level);
        for (int t = 1; t < m; ++t) {
            const LevelKey prev = ordering.at(t);
            const Subspace orig = forms[static_cast<std::size_t>(prev.state)].level_subspace(prev.level);
            cur = eps_subtract(cur, orig, eps).reduced;
            if (cur.rank() == 0) break;
        }
        dug.reduced[static_cast<std::size_t>(m)] = std::move(cur);
        dug.position[static_cast<std::size_t>(key.state)][static_cast<std::size_t>(key.level)] = m;
    }
    return dug;
}

std::vector<Subspace> orthogonalize(const DugEnsemble& dug) {
    const int d = dug.dim;
    std::vector<Subspace> hat(dug.reduced.size(), Subspace::zero(d));

    // Accumulated orthonormal basis; at most d columns ever survive.
    ComplexMatrix acc(d, d);
    int kept = 0;
    std::vector<cplx> v(static_cast<std::size_t>(d));

    for (int m = 1; m <= dug.ordering.size(); ++m) {
        const ComplexMatrix& b = dug.reduced[static_cast<std::size_t>(m)].basis;
        const int first = kept;
        for (int c = 0; c < b.cols(); ++c) {
            for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] = b(r, c);
            for (int pass = 0; pass < 2; ++pass) {
                for (int u = 0; u < kept; ++u) {
                    cplx proj(0.0, 0.0);
                    for (int r = 0; r < d; ++r) proj += std::conj(acc(r, u)) * v[static_cast<std::size_t>(r)];
                    for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] -= proj * acc(r, u);
                }
            }
            double nrm = 0.0;
            for (int r = 0; r < d; ++r) nrm += std::norm(v[static_cast<std::size_t>(r)]);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-10) continue;
            for (int r = 0; r < d; ++r) acc(r, kept) = v[static_cast<std::size_t>(r)] / nrm;
            ++kept;
        }
        ComplexMatrix basis(d, kept - first);
        for (int c = first; c < kept; ++c)
            for (int r = 0; r < d; ++r) basis(r, c - first) = acc(r, c);
        hat[static_cast<std::size_t>(m)] = Subspace{d, std::move(basis)};
    }
    return hat;
}

double default_epsilon(int r, int t_max) {
    if (r < 2 || t_max < 1) throw ValidationError("default_epsilon: need r >= 2 and T >= 1");
    return 2.0 / (5.0 * (r - 1) * t_max);
}

ProjectiveMeasurement build_measurement_from_forms(const std::vector<SpectralForm>& forms,
                                                   std::optional<double> eps_opt) {
    const int r = static_cast<int>(forms.size());
    if (r < 2) throw ValidationError("build_measurement: need at least two states");
    const int d = forms.front().dim;
    int t_max = 0;
    for (const SpectralForm& f : forms) {
        if (f.dim != d) throw ValidationError("build_measurement: states have different dimensions");
        if (f.num_levels() == 0)
            throw ValidationError("build_measurement: a state is numerically zero");
        t_max = std::max(t_max, f.num_levels());
    }

    const double eps = eps_opt.value_or(default_epsilon(r, t_max));
    if (!((r - 1) * t_max * eps < 0.5))
        throw EpsilonTooLargeError("build_measurement: (r-1)*T*eps = " +
                                   std::to_string((r - 1) * t_max * eps) +
                                   " must be below 1/2");

    const OrderingMap ordering = order_eigenvalues(forms);
    const DugEnsemble dug = dig_eigenspaces(forms, ordering, eps);
    const std::vector<Subspace> hat = orthogonalize(dug);

    ProjectiveMeasurement meas;
    meas.epsilon = eps;
    meas.outcome_subspaces.resize(static_cast<std::size_t>(r));
    meas.outcomes.assign(static_cast<std::size_t>(r), ComplexMatrix(d, d));
    for (int m = 1; m <= ordering.size(); ++m) {
        const LevelKey key = ordering.at(m);
        meas.outcome_subspaces[static_cast<std::size_t>(key.state)].push_back(hat[static_cast<std::size_t>(m)]);
        if (hat[static_cast<std::size_t>(m)].rank() > 0)
            meas.outcomes[static_cast<std::size_t>(key.state)] += projector(hat[static_cast<std::size_t>(m)]);
    }

    meas.residual = ComplexMatrix::identity(d);
    for (const ComplexMatrix& pi : meas.outcomes) meas.residual -= pi;
    meas.outcomes.back() += meas.residual;
    return meas;
}

ProjectiveMeasurement build_measurement(const std::vector<WeightedState>& ensemble,
                                        std::optional<double> eps_opt) {
    std::vector<SpectralForm> forms;
    forms.reserve(ensemble.size());
    for (const WeightedState& ws : ensemble) forms.push_back(spectral_decompose(ws.weighted()));
    return build_measurement_from_forms(forms, eps_opt);
}

double error_probability(const std::vector<ComplexMatrix>& weighted_states,
                         const ProjectiveMeasurement& m) {
    if (weighted_states.size() != m.outcomes.size())
        throw ValidationError("error_probability: outcome count mismatch");
    double err = 0.0;
    for (std::size_t i = 0; i < weighted_states.size(); ++i) {
        const ComplexMatrix& a = weighted_states[i];
        if (a.rows() != m.outcomes[i].rows())
            throw ValidationError("error_probability: dimension mismatch");
        err += a.trace().real() - trace_product(a, m.outcomes[i]).real();
    }
    return err;
}

double error_probability(const std::vector<WeightedState>& ensemble,
                         const ProjectiveMeasurement& m) {
    std::vector<ComplexMatrix> weighted;
    weighted.reserve(ensemble.size());
    for (const WeightedState& ws : ensemble) weighted.push_back(ws.weighted());
    return error_probability(weighted, m);
}

PovmReport validate_povm(const std::vector<ComplexMatrix>& elements) {
    if (elements.empty()) throw ValidationError("validate_povm: empty element list");
    const int d = elements.front().rows();

    PovmReport report;
    ComplexMatrix sum(d, d);
    for (const ComplexMatrix& e : elements) sum += e;
    report.completeness_residual = frobenius_distance(sum, ComplexMatrix::identity(d));

    report.max_cross_norm = 0.0;
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            if (i == j) continue;
            report.max_cross_norm = std::max(
                report.max_cross_norm, kernels::matmul(elements[i], elements[j]).frobenius_norm());
        }

    report.min_eigenvalue = 0.0;
    bool first = true;
    for (const ComplexMatrix& e : elements) {
        const std::vector<double> evs = herm_eigvals(e);
        const double low = evs.empty() ? 0.0 : evs.front();
        if (first || low < report.min_eigenvalue) report.min_eigenvalue = low;
        first = false;
    }
    return report;
}

} // namespace qsd
