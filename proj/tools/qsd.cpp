#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsd/ensemble_io.hpp"
#include "qsd/reports.hpp"
#include "qsd/selftest.hpp"

namespace {

struct EpsPolicy {
    std::optional<double> fixed; // empty means the per-instance default
    std::vector<double> sweep;   // nonempty only for sweep:<lo>:<hi>:<steps>
    bool is_sweep() const { return !sweep.empty(); }
};

EpsPolicy parse_eps_policy(const std::string& text) {
    EpsPolicy policy;
    if (text.empty() || text == "default") return policy;
    if (text.rfind("sweep:", 0) == 0) {
        double lo = 0.0, hi = 0.0;
        int steps = 0;
        if (std::sscanf(text.c_str(), "sweep:%lf:%lf:%d", &lo, &hi, &steps) != 3 || steps < 1)
            throw qsd::ValidationError("--eps sweep wants sweep:<lo>:<hi>:<steps>, got " + text);
        if (steps == 1) {
            policy.sweep.push_back(lo);
        } else {
            for (int i = 0; i < steps; ++i)
                policy.sweep.push_back(lo + (hi - lo) * i / (steps - 1));
        }
        return policy;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        policy.fixed = v;
    } catch (const std::exception&) {
        throw qsd::ValidationError("--eps wants default, a number, or sweep:<lo>:<hi>:<steps>");
    }
    return policy;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounds, measurements and error exponents for discriminating quantum states"};
    app.require_subcommand(1);

    std::string file;
    std::string eps_text = "default";
    bool unnormalized = false;
    int n_max = 1;
    int dim_cap = qsd::kDefaultDimCap;
    std::uint64_t seed = 42;

    CLI::App* cmd_bounds = app.add_subcommand("bounds", "bound bracket and oracle report (JSON)");
    cmd_bounds->add_option("file", file, "ensemble JSON file")->required();
    cmd_bounds->add_flag("--unnormalized", unnormalized,
                         "accept general nonnegative matrices and free priors");

    CLI::App* cmd_measure =
        app.add_subcommand("measure", "construct the projective measurement and report it (JSON)");
    cmd_measure->add_option("file", file, "ensemble JSON file")->required();
    cmd_measure->add_option("--eps", eps_text, "overlap-reduction parameter: default or a number");
    cmd_measure->add_flag("--unnormalized", unnormalized,
                          "accept general nonnegative matrices and free priors");

    CLI::App* cmd_exponent =
        app.add_subcommand("exponent", "tensor-power error-exponent experiment (CSV)");
    cmd_exponent->add_option("file", file, "ensemble JSON file")->required();
    cmd_exponent->add_option("--n-max", n_max, "largest tensor power")->required();
    cmd_exponent->add_option("--eps", eps_text,
                             "default, a number, or sweep:<lo>:<hi>:<steps> (one CSV block per eps)");
    cmd_exponent->add_option("--dim-cap", dim_cap, "largest allowed tensor-power dimension");
    cmd_exponent->add_flag("--unnormalized", unnormalized,
                           "accept general nonnegative matrices and free priors");

    CLI::App* cmd_chernoff =
        app.add_subcommand("chernoff", "pairwise Chernoff distances and their minimum (JSON)");
    cmd_chernoff->add_option("file", file, "ensemble JSON file")->required();

    CLI::App* cmd_selftest =
        app.add_subcommand("selftest", "run the built-in property suites with a fixed seed");
    cmd_selftest->add_option("--seed", seed, "random seed (default 42)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_bounds->parsed()) {
            const qsd::Ensemble ens = qsd::load_ensemble(file, unnormalized);
            std::cout << qsd::to_json(qsd::compute_bound_report(ens)) << "\n";
        } else if (cmd_measure->parsed()) {
            const EpsPolicy policy = parse_eps_policy(eps_text);
            if (policy.is_sweep())
                throw qsd::ValidationError("--eps sweep is only supported by `exponent`");
            const qsd::Ensemble ens = qsd::load_ensemble(file, unnormalized);
            std::cout << qsd::to_json(qsd::compute_measure_report(ens, policy.fixed)) << "\n";
        } else if (cmd_exponent->parsed()) {
            const EpsPolicy policy = parse_eps_policy(eps_text);
            const qsd::Ensemble ens = qsd::load_ensemble(file, unnormalized);
            if (policy.is_sweep()) {
                for (std::size_t i = 0; i < policy.sweep.size(); ++i) {
                    if (i > 0) std::cout << "\n";
                    std::cout << qsd::to_csv(
                        qsd::compute_exponent_report(ens, n_max, policy.sweep[i], dim_cap));
                }
            } else {
                std::cout << qsd::to_csv(
                    qsd::compute_exponent_report(ens, n_max, policy.fixed, dim_cap));
            }
        } else if (cmd_chernoff->parsed()) {
            const qsd::Ensemble ens = qsd::load_ensemble(file, false);
            std::cout << qsd::chernoff_report_json(ens) << "\n";
        } else if (cmd_selftest->parsed()) {
            const std::vector<qsd::SuiteResult> results = qsd::run_selftest(seed);
            std::cout << qsd::selftest_report(seed, results);
            return qsd::all_passed(results) ? 0 : 3;
        }
    } catch (const qsd::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qsd::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
