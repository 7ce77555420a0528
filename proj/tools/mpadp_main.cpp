// mpadp: run the grid-world, mountain-car, min-transform and exact-oracle
// experiments from the command line.
//
// Exit codes: 0 success, 1 invalid input, 2 solver or oracle non-convergence.

#include "mpadp/errors.hpp"
#include "mpadp/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct Flag {
    const char* name;
    const char* help;
};

const std::vector<Flag> kFlags = {
    {"alpha", "discount factor in (0,1)"},
    {"k", "partition count (gridworld) or centers per axis (mountaincar)"},
    {"k1", "mountain-car evaluation grid points per axis"},
    {"beta", "mountain-car feature scale"},
    {"gamma", "mountain-car feature exponent (> 1)"},
    {"epsilon", "solver stopping threshold on the gradient sup-norm"},
    {"tol", "value iteration / policy evaluation tolerance"},
    {"max-iter", "iteration cap for the solver and value iteration"},
    {"start", "mountain-car start state 'x,y' (use --start=-0.5,0)"},
    {"max-steps", "mountain-car rollout step cap"},
    {"dynamics", "mountain-car position update: literal | standard"},
    {"out-dir", "output directory"},
    {"rewards", "grid-world reward CSV (10 rows x 10 integers)"},
    {"env", "exact: gridworld | m2"},
    {"sweep", "extra grid-world k values, e.g. '5,9,10', or 'none'"},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Min-plus approximate dynamic programming experiments"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        mpadp::Experiment experiment;
    };
    std::vector<Sub> subs;
    std::map<std::string, std::string> values;
    std::string config;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gridworld", "10x10 grid world: exact oracle vs min-plus solver"},
        {"mountaincar", "discretized mountain car: solve, heatmap, greedy rollout"},
        {"fenchel-demo", "min-plus projection of x^2 onto shifted |x - a| cones"},
        {"exact", "value iteration oracle: J* and optimal policy"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        for (const auto& f : kFlags) sub->add_option(std::string("--") + f.name, values[f.name], f.help);
        sub->add_option("--config", config, "file of 'key = value' lines; flags override it");
        subs.push_back({sub, mpadp::parse_experiment(name)});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        mpadp::ExperimentConfig cfg;
        for (const auto& s : subs)
            if (s.app->parsed()) cfg.experiment = s.experiment;
        if (!config.empty()) cfg.load_file(config);
        for (const auto& s : subs) {
            if (!s.app->parsed()) continue;
            for (const auto& f : kFlags)
                if (s.app->count(std::string("--") + f.name) > 0) cfg.set(f.name, values[f.name]);
        }
        const mpadp::ExperimentReport report = mpadp::run_experiment(cfg);
        report.write(std::cout);
        return 0;
    } catch (const mpadp::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (last residual " << e.last_residual() << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
