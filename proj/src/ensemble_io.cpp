#include "qsd/ensemble_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qsd {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_g17_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt_g17(v);
}

std::vector<ComplexMatrix> Ensemble::weighted_matrices() const {
    std::vector<ComplexMatrix> out;
    out.reserve(states.size());
    for (const WeightedState& ws : states) out.push_back(ws.weighted());
    return out;
}

namespace {

using nlohmann::json;

ComplexMatrix parse_matrix(const json& jm, std::size_t state_index) {
    const std::string where = "states[" + std::to_string(state_index) + "].matrix";
    if (!jm.is_array() || jm.empty())
        throw ValidationError(where + " must be a nonempty array of rows");
    const int dim = static_cast<int>(jm.size());
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = jm[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ValidationError(where + " row " + std::to_string(r) +
                                  ": matrix must be square");
        for (int c = 0; c < dim; ++c) {
            const json& entry = row[static_cast<std::size_t>(c)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw ValidationError(where + " entry (" + std::to_string(r) + "," +
                                      std::to_string(c) + ") must be a [re, im] pair");
            m(r, c) = cplx(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

} // namespace

Ensemble parse_ensemble(const std::string& json_text, bool unnormalized) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("ensemble JSON: ") + e.what());
    }

    if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_array() ||
        doc["states"].empty())
        throw ValidationError("ensemble JSON must contain a nonempty \"states\" array");

    Ensemble ens;
    bool any_label = false;
    double prior_sum = 0.0;
    for (std::size_t i = 0; i < doc["states"].size(); ++i) {
        const json& js = doc["states"][i];
        if (!js.is_object() || !js.contains("prior") || !js["prior"].is_number())
            throw ValidationError("states[" + std::to_string(i) +
                                  "] must carry a numeric \"prior\"");
        if (!js.contains("matrix"))
            throw ValidationError("states[" + std::to_string(i) + "] is missing \"matrix\"");

        WeightedState ws;
        ws.prior = js["prior"].get<double>();
        ws.state = parse_matrix(js["matrix"], i);
        ws.normalized = !unnormalized;
        prior_sum += ws.prior;
        ens.states.push_back(std::move(ws));

        if (js.contains("label")) {
            if (!js["label"].is_string())
                throw ValidationError("states[" + std::to_string(i) + "].label must be a string");
            any_label = true;
        }
    }
    if (any_label) {
        for (std::size_t i = 0; i < doc["states"].size(); ++i) {
            const json& js = doc["states"][i];
            ens.labels.push_back(js.contains("label") ? js["label"].get<std::string>()
                                                      : std::string());
        }
    }

    const int dim = ens.states.front().state.rows();
    for (std::size_t i = 0; i < ens.states.size(); ++i)
        if (ens.states[i].state.rows() != dim)
            throw ValidationError("states[" + std::to_string(i) +
                                  "]: all states must share one dimension");

    if (!unnormalized && std::abs(prior_sum - 1.0) > 1e-9)
        throw ValidationError("priors must sum to 1 within 1e-9, got " + fmt_g17(prior_sum) +
                              " (pass --unnormalized to lift this)");
    for (std::size_t i = 0; i < ens.states.size(); ++i) {
        try {
            ens.states[i].validate();
        } catch (const Error& e) {
            throw ValidationError("states[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return ens;
}

Ensemble load_ensemble(const std::string& path, bool unnormalized) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open ensemble file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ensemble(buf.str(), unnormalized);
}

std::string ensemble_to_json(const Ensemble& ensemble) {
    std::string out = "{\"states\":[";
    for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
        const WeightedState& ws = ensemble.states[i];
        if (i > 0) out += ",";
        out += "{\"prior\":" + fmt_g17(ws.prior);
        if (!ensemble.labels.empty())
            out += ",\"label\":\"" + ensemble.labels[i] + "\"";
        out += ",\"matrix\":[";
        for (int r = 0; r < ws.state.rows(); ++r) {
            if (r > 0) out += ",";
            out += "[";
            for (int c = 0; c < ws.state.cols(); ++c) {
                if (c > 0) out += ",";
                out += "[" + fmt_g17(ws.state(r, c).real()) + "," + fmt_g17(ws.state(r, c).imag()) +
                       "]";
            }
            out += "]";
        }
        out += "]}";
    }
    out += "]}";
    return out;
}

} // namespace qsd
