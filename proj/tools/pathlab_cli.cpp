// Command-line harness for the path-integral laboratory.
//
// Subcommands: kernel | evolve | transition | classical-path |
//              theorem-check | variational-check
// Exit codes: 0 success, 1 validation, 2 numerical failure, 3 I/O.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <iostream>

#include "pathlab/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Path to the JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "Output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides config)")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--threads", args.threads, "Worker threads for internal linear algebra");
}

pathlab::ExperimentConfig load_config(const CommonArgs& args) {
    auto cfg = pathlab::ExperimentConfig::from_json_file(args.config_path);
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
    if (args.seed_set) cfg.rng_seed = args.seed;
    if (args.threads > 0) Eigen::setNbThreads(args.threads);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathlab: a numerical laboratory for 1D path-integral transition quantities"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string command;
    for (const char* name : {"kernel", "evolve", "transition", "classical-path",
                             "theorem-check", "variational-check"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, args);
        sub->callback([&command, name]() { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const pathlab::ExperimentConfig cfg = load_config(args);
        if (command == "kernel") {
            const auto report = pathlab::cmd_kernel(cfg);
            std::cout << "kernel written; edge leak " << report.edge_leak << "\n";
            for (const auto& [n, err] : report.convergence) {
                std::cout << "  n_slices " << n << ": mid-domain rel error " << err << "\n";
            }
        } else if (command == "evolve") {
            const auto report = pathlab::cmd_evolve(cfg);
            std::cout << "evolution written; norm drift " << report.norm_drift
                      << ", final L2 error vs oracle " << report.final_l2_error << "\n";
        } else if (command == "transition") {
            pathlab::cmd_transition(cfg);
            std::cout << "transition quantities written to " << cfg.output_dir.string() << "\n";
        } else if (command == "classical-path") {
            const auto result = pathlab::cmd_classical_path(cfg);
            std::cout << "classical path: action " << result.action << ", residual "
                      << result.stationarity_residual << "\n";
        } else if (command == "theorem-check") {
            const auto report = pathlab::cmd_theorem_check(cfg);
            std::cout << "theorem check: max deviation " << report.max_deviation
                      << " (tolerance " << report.tol_quadratic << ", "
                      << (report.quadratic_family
                              ? (report.quadratic_pass ? "pass" : "FAIL")
                              : "reported only, anharmonic potential")
                      << ")\n";
            for (const auto& p : report.hbar_points) {
                std::cout << "  hbar " << p.hbar << ": max deviation " << p.max_deviation
                          << ", x^2 residual " << p.max_fluctuation_residual << "\n";
            }
        } else if (command == "variational-check") {
            const auto report = pathlab::cmd_variational_check(cfg);
            std::cout << "variational check: residual " << report.residual
                      << ", probe fraction " << report.probe_fraction << ", "
                      << (report.minimal ? "minimum" : "stationary but not minimal") << "\n";
        }
    } catch (const pathlab::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const pathlab::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const pathlab::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
