#include "qsd/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double neg_log_over_n(double v, int n) {
    if (v <= 0.0) return kInf;
    return -std::log(v) / n;
}

std::string json_matrix(const std::vector<std::vector<double>>& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) out += ",";
        out += "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (j > 0) out += ",";
            if (std::isinf(m[i][j]))
                out += "\"inf\"";
            else
                out += fmt_g17(m[i][j]);
        }
        out += "]";
    }
    return out + "]";
}

std::string json_number(double v) { return std::isinf(v) ? "\"inf\"" : fmt_g17(v); }

void append_field(std::string& out, const char* name, const std::string& value, bool& first) {
    if (!first) out += ",";
    first = false;
    out += std::string("\"") + name + "\":" + value;
}

} // namespace

std::vector<ComplexMatrix> normalized_states(const Ensemble& ensemble) {
    std::vector<ComplexMatrix> out;
    out.reserve(ensemble.states.size());
    for (const WeightedState& ws : ensemble.states) {
        ComplexMatrix rho = ws.state;
        const double tr = rho.trace().real();
        if (!(tr > 0.0)) throw ValidationError("state with nonpositive trace");
        if (std::abs(tr - 1.0) > 1e-12) rho *= 1.0 / tr;
        out.push_back(std::move(rho));
    }
    return out;
}

BoundReport compute_bound_report(const Ensemble& ensemble, std::optional<double> eps) {
    const int r = ensemble.size();
    if (r < 2) throw ValidationError("bounds need at least two hypotheses");

    BoundReport rep;
    rep.r = r;
    rep.dim = ensemble.dim();
    rep.labels = ensemble.labels;

    const std::vector<SpectralForm> forms = weighted_forms(ensemble.states);
    rep.overlap_sum = pairwise_overlap_sum(forms);
    rep.upper_thm2 = one_shot_upper(forms);
    rep.upper_binned = one_shot_upper_binned(forms);
    rep.lower_eq4 = one_shot_lower(forms);

    const ProjectiveMeasurement meas = build_measurement_from_forms(forms, eps);
    rep.epsilon = meas.epsilon;
    rep.measurement_error = error_probability(ensemble.weighted_matrices(), meas);

    if (r == 2) {
        rep.helstrom = helstrom_error(ensemble.states[0], ensemble.states[1]);
        rep.audenaert = audenaert_bound(forms[0], forms[1]);
    }
    try {
        rep.diagonal_oracle = diagonal_oracle(ensemble.weighted_matrices());
    } catch (const NotCommutingError&) {
        // states are not simultaneously diagonal; leave the field empty
    }
    rep.pgm_error = pgm_error(ensemble.weighted_matrices());

    rep.chernoff_matrix = chernoff_matrix(normalized_states(ensemble));
    rep.multiple_chernoff = kInf;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            rep.multiple_chernoff = std::min(rep.multiple_chernoff, rep.chernoff_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return rep;
}

std::string to_json(const BoundReport& rep) {
    std::string out = "{";
    bool first = true;
    append_field(out, "r", std::to_string(rep.r), first);
    append_field(out, "dim", std::to_string(rep.dim), first);
    if (!rep.labels.empty()) {
        std::string labels = "[";
        for (std::size_t i = 0; i < rep.labels.size(); ++i) {
            if (i > 0) labels += ",";
            labels += "\"" + rep.labels[i] + "\"";
        }
        labels += "]";
        append_field(out, "labels", labels, first);
    }
    append_field(out, "overlap_sum", json_number(rep.overlap_sum), first);
    append_field(out, "upper_thm2", json_number(rep.upper_thm2), first);
    append_field(out, "upper_binned", json_number(rep.upper_binned), first);
    append_field(out, "lower_eq4", json_number(rep.lower_eq4), first);
    append_field(out, "epsilon", json_number(rep.epsilon), first);
    if (rep.measurement_error)
        append_field(out, "measurement_error", json_number(*rep.measurement_error), first);
    if (rep.helstrom) append_field(out, "helstrom", json_number(*rep.helstrom), first);
    if (rep.audenaert) append_field(out, "audenaert", json_number(*rep.audenaert), first);
    if (rep.diagonal_oracle)
        append_field(out, "diagonal_oracle", json_number(*rep.diagonal_oracle), first);
    append_field(out, "pgm_error", json_number(rep.pgm_error), first);
    append_field(out, "chernoff_matrix", json_matrix(rep.chernoff_matrix), first);
    append_field(out, "multiple_chernoff", json_number(rep.multiple_chernoff), first);
    return out + "}";
}

MeasureReport compute_measure_report(const Ensemble& ensemble, std::optional<double> eps) {
    MeasureReport rep;
    rep.r = ensemble.size();
    rep.dim = ensemble.dim();
    const ProjectiveMeasurement meas = build_measurement(ensemble.states, eps);
    rep.epsilon = meas.epsilon;
    rep.error = error_probability(ensemble.weighted_matrices(), meas);
    for (const std::vector<Subspace>& subs : meas.outcome_subspaces) {
        int rank = 0;
        for (const Subspace& s : subs) rank += s.rank();
        rep.outcome_ranks.push_back(rank);
    }
    rep.povm = validate_povm(meas.outcomes);
    return rep;
}

std::string to_json(const MeasureReport& rep) {
    std::string out = "{";
    bool first = true;
    append_field(out, "r", std::to_string(rep.r), first);
    append_field(out, "dim", std::to_string(rep.dim), first);
    append_field(out, "epsilon", json_number(rep.epsilon), first);
    append_field(out, "error", json_number(rep.error), first);
    std::string ranks = "[";
    for (std::size_t i = 0; i < rep.outcome_ranks.size(); ++i) {
        if (i > 0) ranks += ",";
        ranks += std::to_string(rep.outcome_ranks[i]);
    }
    ranks += "]";
    append_field(out, "outcome_ranks", ranks, first);
    append_field(out, "povm_completeness_residual", json_number(rep.povm.completeness_residual),
                 first);
    append_field(out, "povm_max_cross_norm", json_number(rep.povm.max_cross_norm), first);
    append_field(out, "povm_min_eigenvalue", json_number(rep.povm.min_eigenvalue), first);
    return out + "}";
}

ExponentReport compute_exponent_report(const Ensemble& ensemble, int n_max,
                                       std::optional<double> eps, int dim_cap) {
    const int r = ensemble.size();
    if (r < 2) throw ValidationError("exponent experiment needs at least two hypotheses");
    if (n_max < 1) throw ValidationError("--n-max must be at least 1");
    const int d = ensemble.dim();

    ExponentReport rep;
    rep.r = r;
    rep.chernoff = multiple_chernoff(normalized_states(ensemble));

    std::vector<SpectralForm> base_forms;
    base_forms.reserve(static_cast<std::size_t>(r));
    for (const WeightedState& ws : ensemble.states)
        base_forms.push_back(spectral_decompose(ws.state));

    double max_prior = 0.0;
    for (const WeightedState& ws : ensemble.states) max_prior = std::max(max_prior, ws.prior);
    const double pairs = 0.5 * r * (r - 1); // C(r,2)

    for (int n = 1; n <= n_max; ++n) {
        std::vector<SpectralForm> forms;
        forms.reserve(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i)
            forms.push_back(tensor_power(base_forms[static_cast<std::size_t>(i)], n, dim_cap)
                                .scaled(ensemble.states[static_cast<std::size_t>(i)].prior));

        ExponentRow row;
        row.n = n;
        row.dim = forms.front().dim;
        row.t_max = 0;
        for (const SpectralForm& f : forms) row.t_max = std::max(row.t_max, f.num_levels());

        const ProjectiveMeasurement meas = build_measurement_from_forms(forms, eps);
        row.eps = meas.epsilon;

        row.overlap_sum = pairwise_overlap_sum(forms);
        row.ub = one_shot_upper_factor(r, row.t_max) * row.overlap_sum;
        row.lb = row.overlap_sum / (2.0 * (r - 1));

        std::vector<ComplexMatrix> dense;
        dense.reserve(static_cast<std::size_t>(r));
        for (const SpectralForm& f : forms) dense.push_back(f.dense());
        row.p_e = error_probability(dense, meas);

        row.exp_measured = neg_log_over_n(row.p_e, n);
        row.exp_ub = neg_log_over_n(row.ub, n);
        row.exp_lb = neg_log_over_n(row.lb, n);
        row.exp_deficit_bound =
            (2.0 * d * std::log(n + 1.0) +
             std::log(10.0 * (r - 1.0) * (r - 1.0) * pairs * max_prior)) /
            n;
        rep.rows.push_back(row);
    }
    return rep;
}

std::string to_csv(const ExponentReport& rep) {
    std::string out =
        "n,dim,t_max,eps,overlap_sum,p_e,ub,lb,exp_measured,exp_ub,exp_lb,exp_deficit_bound,"
        "chernoff\n";
    auto cell = [](double v) { return std::isinf(v) ? std::string() : fmt_g17(v); };
    for (const ExponentRow& row : rep.rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.dim) + "," +
               std::to_string(row.t_max) + "," + fmt_g17(row.eps) + "," +
               cell(row.overlap_sum) + "," + cell(row.p_e) + "," + cell(row.ub) + "," +
               cell(row.lb) + "," + cell(row.exp_measured) + "," + cell(row.exp_ub) + "," +
               cell(row.exp_lb) + "," + cell(row.exp_deficit_bound) + "," + cell(rep.chernoff) +
               "\n";
    }
    return out;
}

std::string chernoff_report_json(const Ensemble& ensemble) {
    if (ensemble.size() < 2) throw ValidationError("chernoff needs at least two hypotheses");
    const std::vector<std::vector<double>> m = chernoff_matrix(normalized_states(ensemble));
    double mc = kInf;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) mc = std::min(mc, m[i][j]);

    std::string out = "{";
    bool first = true;
    append_field(out, "r", std::to_string(ensemble.size()), first);
    append_field(out, "dim", std::to_string(ensemble.dim()), first);
    append_field(out, "chernoff_matrix", json_matrix(m), first);
    append_field(out, "multiple_chernoff", json_number(mc), first);
    return out + "}";
}

} // namespace qsd
