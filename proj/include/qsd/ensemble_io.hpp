#pragma once

#include <string>
#include <vector>

#include "qsd/spectral.hpp"

namespace qsd {

/// Formats a double with 17 significant digits ("%.17g"), enough to
/// round-trip the exact bit pattern through text.
std::string fmt_g17(double v);

/// fmt_g17, with infinities rendered as the bare token "inf" / "-inf".
std::string fmt_g17_or_inf(double v);

struct Ensemble {
    std::vector<WeightedState> states;
    std::vector<std::string> labels; // empty, or one per state

    int dim() const { return states.empty() ? 0 : states.front().state.rows(); }
    int size() const { return static_cast<int>(states.size()); }

    std::vector<ComplexMatrix> weighted_matrices() const;
};

/// Parses the ensemble JSON: {"states": [{"prior": p, "matrix": [[[re,im],
/// ...], ...], "label": optional}, ...]}. Priors must be positive and, unless
/// `unnormalized`, sum to 1 within 1e-9 with each matrix a unit-trace density
/// matrix. Throws ParseError for malformed JSON, ValidationError naming the
/// violated invariant otherwise.
Ensemble parse_ensemble(const std::string& json_text, bool unnormalized = false);

/// parse_ensemble on the contents of a file.
Ensemble load_ensemble(const std::string& path, bool unnormalized = false);

/// Serializes an ensemble back to JSON with fmt_g17 numbers; parsing the
/// output reproduces every matrix entry exactly.
std::string ensemble_to_json(const Ensemble& ensemble);

} // namespace qsd
