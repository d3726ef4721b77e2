#include "qsd/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsd/bounds.hpp"
#include "qsd/eig.hpp"
#include "qsd/ensemble_io.hpp"
#include "qsd/measurement.hpp"
#include "qsd/random_states.hpp"
#include "qsd/subtraction.hpp"

namespace qsd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string json_matrix_entries(const ComplexMatrix& m) {
    std::string out = "[";
    for (int r = 0; r < m.rows(); ++r) {
        if (r > 0) out += ",";
        out += "[";
        for (int c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ",";
            out += "[" + fmt_g17(m(r, c).real()) + "," + fmt_g17(m(r, c).imag()) + "]";
        }
        out += "]";
    }
    return out + "]";
}

// Tracks the tightest slack; records the first violating instance.
struct Tracker {
    SuiteResult res;
    bool violated_this_instance = false;

    explicit Tracker(std::string name) { res.name = std::move(name); }

    void begin_instance() { violated_this_instance = false; }

    void check(double margin, const std::string& counterexample) {
        if (res.instances == 0 && res.worst_margin == 0.0) res.worst_margin = kInf;
        res.worst_margin = std::min(res.worst_margin, margin);
        if (margin < 0.0 && !violated_this_instance) {
            violated_this_instance = true;
            ++res.violations;
            if (res.first_counterexample.empty()) res.first_counterexample = counterexample;
        }
    }

    void end_instance() { ++res.instances; }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return seed * 6364136223846793005ULL + salt * 0x9E3779B97F4A7C15ULL + 1442695040888963407ULL;
}

double min_eigenvalue(const ComplexMatrix& h) {
    const std::vector<double> evs = herm_eigvals(h);
    return evs.empty() ? 0.0 : evs.front();
}

} // namespace

SuiteResult run_lemma1_suite(std::uint64_t seed, int instances) {
    Rng rng(mix_seed(seed, 1));
    Tracker t("lemma1-subtraction");
    for (int i = 0; i < instances; ++i) {
        t.begin_instance();
        const int dim = rng.uniform_int(2, 12);
        const Subspace s1 = random_subspace(dim, rng.uniform_int(1, dim), rng);
        const Subspace s2 = random_subspace(dim, rng.uniform_int(1, dim), rng);
        const double eps = rng.uniform(0.05, 0.95);
        const SubtractionResult res = eps_subtract(s1, s2, eps);

        const std::string ce = "{\"dim\":" + std::to_string(dim) + ",\"eps\":" + fmt_g17(eps) +
                               ",\"s1_projector\":" + json_matrix_entries(projector(s1)) +
                               ",\"s2_projector\":" + json_matrix_entries(projector(s2)) + "}";

        // containment of the reduced subspace in s1
        const ComplexMatrix p1 = projector(s1);
        if (res.reduced.rank() > 0) {
            ComplexMatrix outside = res.reduced.basis;
            outside -= kernels::matmul(p1, res.reduced.basis);
            t.check(1e-8 - outside.frobenius_norm(), ce);
        }
        // projector order P_reduced <= P1
        ComplexMatrix gap = p1;
        gap -= projector(res.reduced);
        t.check(min_eigenvalue(gap) + 1e-8, ce);
        // bounded overlap with s2
        t.check(eps + 1e-8 - overlap(res.reduced, s2), ce);
        // rank-removal budget tr(P1 P2) / eps^2
        double tr_p1p2 = 0.0;
        if (s1.rank() > 0 && s2.rank() > 0) {
            const ComplexMatrix m = kernels::adj_matmul(s1.basis, s2.basis);
            for (const cplx& v : m.data()) tr_p1p2 += std::norm(v);
        }
        t.check(tr_p1p2 / (eps * eps) + 1e-8 - res.removed_rank, ce);
        t.end_instance();
    }
    return t.res;
}

SuiteResult run_lemma2_suite(std::uint64_t seed, int instances) {
    Rng rng(mix_seed(seed, 2));
    Tracker t("lemma2-direct-sum-overlap");
    for (int i = 0; i < instances; ++i) {
        t.begin_instance();
        const int dim = rng.uniform_int(4, 12);
        const int t1 = rng.uniform_int(1, 3);
        const int t2 = rng.uniform_int(1, 3);

        auto carve = [&rng, dim](int parts_count) {
            const ComplexMatrix u = random_unitary(dim, rng);
            std::vector<Subspace> parts;
            int col = 0;
            for (int p = 0; p < parts_count; ++p) {
                const int rank = std::min(rng.uniform_int(1, 2), dim - col);
                ComplexMatrix b(dim, rank);
                for (int c = 0; c < rank; ++c, ++col)
                    for (int r = 0; r < dim; ++r) b(r, c) = u(r, col);
                parts.push_back(Subspace{dim, std::move(b)});
            }
            return parts;
        };
        const std::vector<Subspace> v_parts = carve(t1);
        const std::vector<Subspace> w_parts = carve(t2);

        double delta_hat = 0.0;
        for (const Subspace& v : v_parts)
            for (const Subspace& w : w_parts) delta_hat = std::max(delta_hat, overlap(v, w));

        const double got = check_lemma2(v_parts, w_parts, delta_hat);
        const double bound = std::sqrt(double(t1) * double(t2)) * delta_hat;

        std::string ce = "{\"dim\":" + std::to_string(dim) + ",\"delta\":" + fmt_g17(delta_hat) +
                         ",\"v_projectors\":[";
        for (std::size_t p = 0; p < v_parts.size(); ++p)
            ce += (p ? "," : "") + json_matrix_entries(projector(v_parts[p]));
        ce += "],\"w_projectors\":[";
        for (std::size_t p = 0; p < w_parts.size(); ++p)
            ce += (p ? "," : "") + json_matrix_entries(projector(w_parts[p]));
        ce += "]}";

        t.check(bound + 1e-8 - got, ce);
        t.end_instance();
    }
    return t.res;
}

SuiteResult run_lemma3_suite(std::uint64_t seed, int instances) {
    Rng rng(mix_seed(seed, 3));
    Tracker t("lemma3-projector-sum");
    for (int i = 0; i < instances; ++i) {
        t.begin_instance();
        const int r = rng.uniform_int(2, 4);
        const int dim = rng.uniform_int(2 * r, 2 * r + 4);
        const double delta_limit = 1.0 / (2.0 * (r - 1));

        std::vector<Subspace> subs;
        double delta_hat = 0.0;
        double alpha = rng.uniform(0.0, 0.03);
        // Perturb disjoint blocks of a random unitary; halve the
        // perturbation until the measured overlap clears the lemma's
        // precondition with margin.
        while (true) {
            subs.clear();
            const ComplexMatrix u = random_unitary(dim, rng);
            int col = 0;
            for (int s = 0; s < r; ++s) {
                const int rank = rng.uniform_int(1, 2);
                ComplexMatrix b(dim, rank);
                for (int c = 0; c < rank; ++c, ++col)
                    for (int row = 0; row < dim; ++row)
                        b(row, c) = u(row, col) + alpha * rng.gaussian_cplx();
                subs.push_back(Subspace{dim, orthonormalize_columns(b)});
            }
            delta_hat = 0.0;
            for (std::size_t a = 0; a < subs.size(); ++a)
                for (std::size_t b2 = a + 1; b2 < subs.size(); ++b2)
                    delta_hat = std::max(delta_hat, overlap(subs[a], subs[b2]));
            if (delta_hat < 0.95 * delta_limit) break;
            alpha *= 0.5;
        }

        const ComplexMatrix d_mat = check_lemma3(subs, delta_hat);

        std::string ce = "{\"r\":" + std::to_string(r) + ",\"dim\":" + std::to_string(dim) +
                         ",\"delta\":" + fmt_g17(delta_hat) + ",\"projectors\":[";
        for (std::size_t p = 0; p < subs.size(); ++p)
            ce += (p ? "," : "") + json_matrix_entries(projector(subs[p]));
        ce += "]}";

        t.check(min_eigenvalue(d_mat) + 1e-8, ce);
        t.end_instance();
    }
    return t.res;
}

SuiteResult run_eq6_suite(std::uint64_t seed, int instances, int tensor_powers_to) {
    Rng rng(mix_seed(seed, 4));
    Tracker t("eq6-overlap-vs-audenaert");
    for (int i = 0; i < instances; ++i) {
        t.begin_instance();
        const int d = (i % 2 == 0) ? 2 : 3;
        const double p1 = rng.uniform(0.2, 0.8);

        Ensemble ens;
        ens.states.push_back(
            WeightedState{p1, random_density(d, rng.uniform_int(1, d), rng, 0.2), true});
        ens.states.push_back(
            WeightedState{1.0 - p1, random_density(d, rng.uniform_int(1, d), rng, 0.2), true});
        const std::string ce = ensemble_to_json(ens);

        const SpectralForm base1 = spectral_decompose(ens.states[0].state);
        const SpectralForm base2 = spectral_decompose(ens.states[1].state);

        const int n_top = std::max(1, tensor_powers_to);
        for (int n = 1; n <= n_top; ++n) {
            const SpectralForm f1 = tensor_power(base1, n).scaled(ens.states[0].prior);
            const SpectralForm f2 = tensor_power(base2, n).scaled(ens.states[1].prior);
            const double sum = pairwise_overlap_sum({f1, f2});
            const double aud = audenaert_bound(f1, f2);
            t.check(aud + 1e-9 - sum, ce);
            if (n >= 1 && tensor_powers_to > 1 && sum > 0.0 && aud > 0.0) {
                // exponent gap between the two sides, against the level-count budget
                const double gap = (std::log(aud) - std::log(sum)) / n;
                const double budget =
                    std::log(double(f1.num_levels()) * double(f2.num_levels())) / n;
                t.check(budget + 1e-9 - gap, ce);
            }
        }
        t.end_instance();
    }
    return t.res;
}

SuiteResult run_prop1_suite(std::uint64_t seed, int instances) {
    Rng rng(mix_seed(seed, 5));
    Tracker t("prop1-spectrum-binning");
    for (int i = 0; i < instances; ++i) {
        t.begin_instance();
        const int d = rng.uniform_int(2, 6);
        const double scale = rng.uniform(0.5, 2.0);
        ComplexMatrix a = random_density(d, rng.uniform_int(1, d), rng, 0.05);
        a *= scale;

        Ensemble ens;
        ens.states.push_back(WeightedState{1.0, a, false});
        const std::string ce = ensemble_to_json(ens);

        const BinnedState bin = bin_spectrum(spectral_decompose(a));
        const ComplexMatrix a_prime = bin.binned.dense();

        ComplexMatrix upper = a_prime;
        upper -= a;
        t.check(min_eigenvalue(upper) + 1e-8, ce); // A <= A'
        ComplexMatrix lower = 2.0 * a;
        lower -= a_prime;
        t.check(min_eigenvalue(lower) + 1e-8, ce); // A' <= 2A
        ComplexMatrix comm = kernels::matmul(a, a_prime);
        comm -= kernels::matmul(a_prime, a);
        t.check(1e-8 - comm.frobenius_norm(), ce);
        t.check(double(bin.bin_bound - bin.binned.num_levels()), ce);
        t.end_instance();
    }
    return t.res;
}

SuiteResult run_epsilon_guard_check() {
    Tracker t("epsilon-guard");
    t.begin_instance();
    std::vector<WeightedState> ens;
    const double third = 1.0 / 3.0;
    ens.push_back(WeightedState{third, ComplexMatrix::diagonal({0.75, 0.25}), true});
    ens.push_back(WeightedState{third, ComplexMatrix::diagonal({0.6, 0.4}), true});
    ens.push_back(WeightedState{third, ComplexMatrix::diagonal({0.55, 0.45}), true});
    bool rejected = false;
    try {
        build_measurement(ens, 0.9); // (r-1)*T*eps = 3.6, far past the guard
    } catch (const EpsilonTooLargeError&) {
        rejected = true;
    }
    t.check(rejected ? 1.0 : -1.0, "{\"note\":\"eps=0.9 accepted for r=3, T=2\"}");
    t.end_instance();
    return t.res;
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
    std::vector<SuiteResult> results;
    results.push_back(run_lemma1_suite(seed));
    results.push_back(run_lemma2_suite(seed));
    results.push_back(run_lemma3_suite(seed));
    results.push_back(run_eq6_suite(seed));
    results.push_back(run_prop1_suite(seed));
    results.push_back(run_epsilon_guard_check());
    return results;
}

std::string selftest_report(std::uint64_t seed, const std::vector<SuiteResult>& results) {
    std::string out = "qsd selftest (seed " + std::to_string(seed) + ")\n";
    for (const SuiteResult& r : results) {
        out += r.name + ": " + std::to_string(r.instances) + " instances, " +
               std::to_string(r.violations) + " violations, worst margin " +
               fmt_g17_or_inf(r.worst_margin) + " -> " + (r.passed() ? "pass" : "FAIL") + "\n";
        if (!r.passed() && !r.first_counterexample.empty())
            out += "counterexample: " + r.first_counterexample + "\n";
    }
    out += std::string("selftest: ") + (all_passed(results) ? "PASS" : "FAIL") + "\n";
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    for (const SuiteResult& r : results)
        if (!r.passed()) return false;
    return true;
}

} // namespace qsd
