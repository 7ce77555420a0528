#pragma once

// Batch experiment drivers behind the command-line tool. Each run writes its
// data files and a `report.txt` into the configured output directory.

#include "mpadp/gridworld.hpp"
#include "mpadp/mdp.hpp"
#include "mpadp/mountain_car.hpp"
#include "mpadp/solver.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpadp {

enum class Experiment { GridWorld, MountainCar, FenchelDemo, Exact };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

/// Unset optionals take the experiment's own default:
///   alpha    gridworld 0.9, mountaincar 0.95, exact 0.9 (0.5 for env m2)
///   k        gridworld 10, mountaincar 5
///   epsilon  gridworld 0, mountaincar 1e-5
struct ExperimentConfig {
    Experiment experiment = Experiment::GridWorld;
    std::optional<double> alpha;
    std::optional<std::size_t> k;
    std::optional<double> epsilon;
    std::size_t k1 = 30;
    double beta = 100.0;
    double gamma = 2.0;
    double tol = 1e-10; // value iteration and policy evaluation
    std::size_t max_iter = 1'000'000;
    CarState start{-0.5, 0.0};
    std::size_t max_steps = 1000;
    CarDynamics dynamics = CarDynamics::Literal;
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> rewards; // grid-world reward CSV
    std::string env = "gridworld";                // exact: gridworld | m2
    std::vector<std::size_t> sweep{5, 9, 10};     // extra grid-world k values

    double resolved_alpha() const;
    std::size_t resolved_k() const;
    double resolved_epsilon() const;

    /// Sets one option by name; '-' and '_' are interchangeable in keys.
    void set(std::string key, const std::string& value);
    /// Applies `key = value` lines; '#' starts a comment.
    void load_file(const std::filesystem::path& path);
    void validate() const;

    GridWorldSpec gridworld_spec() const;
    MountainCarSpec mountain_car_spec() const;
};

/// Metrics of one grid-world solve at partition count k. All errors are
/// computed from the value vectors as written to disk.
struct GridRun {
    std::size_t k = 0;
    std::size_t iterations = 0;
    double approx_error = 0.0; // ||J* - Φ⊗r_opt||_inf
    double greedy_error = 0.0; // ||J* - J_ũ||_inf
    BoundReport bound;
    SuboptimalityReport subopt;
    std::size_t action_matches = 0;
    bool upper_bound_holds = false; // Φ⊗r_opt >= J*
    double feasibility_margin = 0.0;
};

struct ExperimentReport {
    Experiment experiment = Experiment::GridWorld;
    double alpha = 0.0;

    std::vector<GridRun> grid_runs; // configured k first, then the sweep

    std::size_t solver_iterations = 0;
    double v_max = 0.0;
    double v_min = 0.0;
    std::optional<std::size_t> steps_to_goal;

    std::vector<double> weights; // fenchel-demo r, or r_opt
    double min_gap = 0.0;        // fenchel-demo min (f̃ - f)
    double value_at_zero = 0.0;  // fenchel-demo f̃(0)

    std::vector<std::string> files;

    void write(std::ostream& out) const;
};

ExperimentReport run_gridworld(const ExperimentConfig& cfg);
ExperimentReport run_mountaincar(const ExperimentConfig& cfg);
ExperimentReport run_fenchel_demo(const ExperimentConfig& cfg);
ExperimentReport run_exact(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Mountain-car heatmap: a `meta,V_max,<v>,V_min,<v>` line, then k1 rows
/// (position index) of k1 values (velocity index).
struct Heatmap {
    double v_max = 0.0;
    double v_min = 0.0;
    std::vector<std::vector<double>> values;
};

Heatmap read_heatmap(const std::filesystem::path& path);

} // namespace mpadp
