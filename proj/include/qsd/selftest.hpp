#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsd {

struct SuiteResult {
    std::string name;
    int instances = 0;
    int violations = 0;
    double worst_margin = 0.0;        // smallest slack (bound minus value) seen; negative = violated
    std::string first_counterexample; // JSON of the first violating instance
    bool passed() const { return violations == 0; }
};

/// Subspace subtraction: containment, bounded overlap, rank-removal budget.
SuiteResult run_lemma1_suite(std::uint64_t seed, int instances = 1000);

/// Direct sums of nearly disjoint part families: overlap <= sqrt(T1 T2) * delta.
SuiteResult run_lemma2_suite(std::uint64_t seed, int instances = 1000);

/// Projector-sum domination of the span projector for nearly orthogonal
/// subspaces (delta measured, precondition enforced).
SuiteResult run_lemma3_suite(std::uint64_t seed, int instances = 1000);

/// Overlap sum never exceeds the Audenaert-type bound. With
/// tensor_powers_to > 1, additionally checks that the per-copy exponent gap
/// between the two sides stays within log(T1 T2 of the powers) / n.
SuiteResult run_eq6_suite(std::uint64_t seed, int instances = 500, int tensor_powers_to = 1);

/// Dyadic spectrum binning: A <= A' <= 2A, commutation, bin-count budget.
SuiteResult run_prop1_suite(std::uint64_t seed, int instances = 200);

/// The epsilon guard must reject (r-1)*T*eps >= 1/2.
SuiteResult run_epsilon_guard_check();

/// The suites behind `qsd selftest`, in their fixed order.
std::vector<SuiteResult> run_selftest(std::uint64_t seed);

/// Deterministic text report: one line per suite, counterexamples after
/// failing suites, a final PASS/FAIL line.
std::string selftest_report(std::uint64_t seed, const std::vector<SuiteResult>& results);

bool all_passed(const std::vector<SuiteResult>& results);

} // namespace qsd
