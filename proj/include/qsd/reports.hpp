#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsd/bounds.hpp"
#include "qsd/ensemble_io.hpp"
#include "qsd/measurement.hpp"

namespace qsd {

/// Everything the `bounds` command reports for one ensemble. Optional fields
/// stay empty when they do not apply (helstrom and audenaert need r = 2, the
/// diagonal oracle needs simultaneously diagonal states).
struct BoundReport {
    int r = 0;
    int dim = 0;
    std::vector<std::string> labels;
    double overlap_sum = 0.0;
    double upper_thm2 = 0.0;
    double upper_binned = 0.0;
    double lower_eq4 = 0.0;
    double epsilon = 0.0; // used by the constructed measurement
    std::optional<double> measurement_error;
    std::optional<double> helstrom;
    std::optional<double> audenaert;
    std::optional<double> diagonal_oracle;
    double pgm_error = 0.0;
    std::vector<std::vector<double>> chernoff_matrix; // entries may be +inf
    double multiple_chernoff = 0.0;
};

BoundReport compute_bound_report(const Ensemble& ensemble,
                                 std::optional<double> eps = std::nullopt);
std::string to_json(const BoundReport& report);

struct MeasureReport {
    int r = 0;
    int dim = 0;
    double epsilon = 0.0;
    double error = 0.0;
    std::vector<int> outcome_ranks;
    PovmReport povm;
};

MeasureReport compute_measure_report(const Ensemble& ensemble,
                                     std::optional<double> eps = std::nullopt);
std::string to_json(const MeasureReport& report);

/// One row of the tensor-power error-exponent experiment.
struct ExponentRow {
    int n = 0;
    int dim = 0;
    int t_max = 0;
    double eps = 0.0;
    double overlap_sum = 0.0;
    double p_e = 0.0;
    double ub = 0.0;
    double lb = 0.0;
    double exp_measured = 0.0;     // -log(p_e)/n
    double exp_ub = 0.0;           // -log(ub)/n
    double exp_lb = 0.0;           // -log(lb)/n
    double exp_deficit_bound = 0.0; // (2d log(n+1) + log(10 (r-1)^2 C(r,2) max_i p_i)) / n
};

struct ExponentReport {
    int r = 0;
    double chernoff = 0.0; // multiple Chernoff distance of the base states
    std::vector<ExponentRow> rows;
};

/// Runs the full pipeline on every tensor power n = 1..n_max: combinatorial
/// tensor-power spectral forms, the bound pair, the constructed measurement
/// and its error, and the per-n exponents. With eps empty, each n uses the
/// default epsilon for that n's level count.
ExponentReport compute_exponent_report(const Ensemble& ensemble, int n_max,
                                       std::optional<double> eps = std::nullopt,
                                       int dim_cap = kDefaultDimCap);

/// CSV with a header row; +inf renders as an empty cell.
std::string to_csv(const ExponentReport& report);

/// Chernoff matrix report for the `chernoff` command.
std::string chernoff_report_json(const Ensemble& ensemble);

/// Density matrices for Chernoff computations: states as given when
/// normalized, otherwise trace-normalized copies.
std::vector<ComplexMatrix> normalized_states(const Ensemble& ensemble);

} // namespace qsd
