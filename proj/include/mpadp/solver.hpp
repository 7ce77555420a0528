#pragma once

// Min-plus approximate dynamic programming: find the least r with
// Φ⊗r >= T(Φ⊗r), i.e. the solution of the min-plus projected Bellman
// equation Φ⊗r = Π_M T Φ⊗r.

#include "mpadp/mdp.hpp"
#include "mpadp/minplus.hpp"
#include "mpadp/model.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace mpadp {

struct SolverConfig {
    /// Stop once ||g_n||_inf <= epsilon. Zero is allowed; it is then
    /// compared with a 1e-12 slack.
    double epsilon = 0.0;
    std::size_t max_iter = 1'000'000;
    /// Positive weights over evaluation states for objective reporting only;
    /// empty means uniform 1/N.
    std::vector<double> c;
    /// Absolute tolerance for participation and active-row tests.
    double tolerance = 1e-7;
    /// Record every iterate r_n in SolverResult::iterates.
    bool keep_iterates = false;

    void validate(std::size_t num_states) const;
};

/// Per-condition breakdown of the active-point test.
struct ActivePointReport {
    bool columns_participate = false;   // every column attains some row minimum
    bool has_active_row = false;        // some row with Φ⊗r = TΦ⊗r
    bool columns_in_active_rows = false; // every column attains the minimum in an active row
    bool feasible = false;
    std::vector<bool> column_participates;
    std::vector<bool> column_in_active_row;
    std::vector<std::size_t> active_rows;

    bool holds() const {
        return columns_participate && has_active_row && columns_in_active_rows && feasible;
    }
};

struct SolverResult {
    WeightVector r_opt;
    MinPlusVector j_tilde; // Φ⊗r_opt over evaluation states
    std::size_t iterations = 0;
    double final_gradient_norm = 0.0;
    double feasibility_margin = 0.0; // min_s (Φ⊗r_opt - TΦ⊗r_opt)(s)
    double objective = 0.0;
    bool active_point = false;
    ActivePointReport active_report;
    std::vector<double> gradient_trace;  // ||g_n||_inf per iteration
    std::vector<double> objective_trace; // c^T Φ⊗r_n per iteration
    std::vector<WeightVector> iterates;  // only with keep_iterates
};

/// Φ⊗r at every point of the model.
std::vector<double> point_values(const FeatureMatrix& phi, std::span<const double> r);

/// Feasible start from the per-column one-variable programs:
///     r_0(i) = max_s (Tφ_i(s) - φ_i(s)) / (1 - α).
/// Throws FiniteFeaturesRequired if Φ has +inf entries.
WeightVector feasible_init(const EvaluableModel& model, const FeatureMatrix& phi);

/// g(j) = min_s [φ_j(s) + r(j) - (TΦ⊗r)(s)] over evaluation states s.
/// Non-negative whenever r is feasible.
std::vector<double> gradient(const EvaluableModel& model, const FeatureMatrix& phi,
                             const WeightVector& r);

/// min_s [(Φ⊗r)(s) - (TΦ⊗r)(s)]
double feasibility_margin(const EvaluableModel& model, const FeatureMatrix& phi,
                          const WeightVector& r);

/// Φ⊗r >= TΦ⊗r - tol at every evaluation state.
bool is_feasible(const EvaluableModel& model, const FeatureMatrix& phi, const WeightVector& r,
                 double tol = 1e-9);

ActivePointReport is_active_point(const EvaluableModel& model, const FeatureMatrix& phi,
                                  const WeightVector& r, double tol = 1e-7);

/// c^T (Φ⊗r) = Σ_i c(i) (Φ⊗r)(i) over the rows of phi. c must be positive.
double objective(std::span<const double> c, const FeatureMatrix& phi, const WeightVector& r);

/// Runs r_{n+1} = r_n - g_n from feasible_init until ||g_n||_inf <= epsilon.
/// Throws NonConvergenceError (with the gradient-norm trace) at max_iter.
SolverResult mpadp_solve(const EvaluableModel& model, const FeatureMatrix& phi,
                         const SolverConfig& cfg = {});

/// Same iteration from a caller-supplied feasible start.
SolverResult mpadp_solve_from(const EvaluableModel& model, const FeatureMatrix& phi,
                              WeightVector start, const SolverConfig& cfg = {});

/// Approximation error of J̃ = Φ⊗r_opt against the best the basis can do.
struct BoundReport {
    double lhs = 0.0;   // ||J* - J̃||_inf
    double best = 0.0;  // min_r ||J* - Φ⊗r||_inf = ||Π_M J* - J*||_inf / 2
    double bound = 0.0; // 2/(1-α) · best
    double ratio = 0.0; // lhs / best (0 when both vanish, +inf when only best does)
    bool violated = false; // lhs > bound + 1e-6
};

BoundReport bound_check(const ValueFunction& j_star, const FeatureMatrix& phi,
                        const WeightVector& r_opt, double alpha);
BoundReport bound_check(const ValueFunction& j_star, const FeatureMatrix& phi,
                        const ValueFunction& j_tilde, double alpha);

/// Axis-aligned grid for brute_force_optimum: points_per_axis values on each
/// [lower(j), upper(j)], endpoints included.
struct GridSpec {
    std::vector<double> lower;
    std::vector<double> upper;
    std::size_t points_per_axis = 101;
};

struct BruteForceResult {
    WeightVector r;          // least feasible grid point
    double objective = 0.0;
    std::size_t feasible_points = 0;
    double resolution = 0.0; // largest grid step
};

/// Exhaustive oracle for small problems (k <= 3): scans the grid, keeps
/// feasible points and returns the one with least objective. Verifies that it
/// coincides with the component-wise minimum of the feasible grid points.
/// Throws GridTooCoarseError when no grid point is feasible.
BruteForceResult brute_force_optimum(const EvaluableModel& model, const FeatureMatrix& phi,
                                     const GridSpec& grid, std::span<const double> c = {});

/// `key = value` lines for the scalar fields, then CSV blocks for r_opt and J̃.
void write_solver_report(std::ostream& out, const SolverResult& result);

} // namespace mpadp
