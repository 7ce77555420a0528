#include "mpadp/solver.hpp"
#include "mpadp/io.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mpadp {

namespace {

constexpr double kZeroEpsilonSlack = 1e-12;

void require_model_features(const EvaluableModel& model, const FeatureMatrix& phi) {
    if (phi.rows() != model.num_points())
        throw DimensionError("feature matrix has " + std::to_string(phi.rows()) +
                             " rows, model has " + std::to_string(model.num_points()) + " points");
}

void require_finite_features(const FeatureMatrix& phi) {
    if (!phi.all_finite())
        throw FiniteFeaturesRequired(
            "solver requires finite features; substitute a large sentinel for +inf");
}

std::vector<double> uniform_weights(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

double eval_objective(std::span<const double> c, std::span<const double> values) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * values[i];
    return acc;
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Φ⊗r at all points and its backup at the evaluation states.
struct Evaluation {
    std::vector<double> values;
    std::vector<double> backed_up;
};

Evaluation evaluate(const EvaluableModel& model, const FeatureMatrix& phi,
                    std::span<const double> r) {
    Evaluation e;
    e.values = point_values(phi, r);
    e.backed_up = model.backup_all(e.values);
    return e;
}

std::vector<double> gradient_from(const FeatureMatrix& phi, std::span<const double> r,
                                  const Evaluation& e, std::size_t num_states) {
    std::vector<double> g(phi.cols(), kInfinity);
    for (std::size_t s = 0; s < num_states; ++s) {
        const auto row = phi.row(s);
        for (std::size_t j = 0; j < row.size(); ++j)
            g[j] = std::min(g[j], row[j] + r[j] - e.backed_up[s]);
    }
    return g;
}

double margin_from(const Evaluation& e, std::size_t num_states) {
    double m = kInfinity;
    for (std::size_t s = 0; s < num_states; ++s) m = std::min(m, e.values[s] - e.backed_up[s]);
    return m;
}

} // namespace

void SolverConfig::validate(std::size_t num_states) const {
    if (!(epsilon >= 0.0)) throw ValidationError("SolverConfig: epsilon must be >= 0");
    if (!(tolerance >= 0.0)) throw ValidationError("SolverConfig: tolerance must be >= 0");
    if (!c.empty()) {
        detail::require_same_size(c.size(), num_states, "SolverConfig c");
        for (double ci : c)
            if (!(ci > 0.0)) throw ValidationError("SolverConfig: c must be strictly positive");
    }
}

std::vector<double> point_values(const FeatureMatrix& phi, std::span<const double> r) {
    detail::require_same_size(r.size(), phi.cols(), "point_values");
    std::vector<double> out(phi.rows());
    for (std::size_t p = 0; p < phi.rows(); ++p) out[p] = mp_row_product(phi.row(p), r);
    return out;
}

WeightVector feasible_init(const EvaluableModel& model, const FeatureMatrix& phi) {
    require_model_features(model, phi);
    require_finite_features(phi);
    const double alpha = model.discount();
    std::vector<double> r0(phi.cols());
    for (std::size_t i = 0; i < phi.cols(); ++i) {
        const std::vector<double> column = phi.column(i);
        const std::vector<double> backed_up = model.backup_all(column);
        double worst = -kInfinity;
        for (std::size_t s = 0; s < model.num_states(); ++s)
            worst = std::max(worst, backed_up[s] - column[s]);
        r0[i] = worst / (1.0 - alpha);
    }
    return WeightVector(std::move(r0));
}

std::vector<double> gradient(const EvaluableModel& model, const FeatureMatrix& phi,
                             const WeightVector& r) {
    require_model_features(model, phi);
    const Evaluation e = evaluate(model, phi, r.values());
    return gradient_from(phi, r.values(), e, model.num_states());
}

double feasibility_margin(const EvaluableModel& model, const FeatureMatrix& phi,
                          const WeightVector& r) {
    require_model_features(model, phi);
    return margin_from(evaluate(model, phi, r.values()), model.num_states());
}

bool is_feasible(const EvaluableModel& model, const FeatureMatrix& phi, const WeightVector& r,
                 double tol) {
    return feasibility_margin(model, phi, r) >= -tol;
}

ActivePointReport is_active_point(const EvaluableModel& model, const FeatureMatrix& phi,
                                  const WeightVector& r, double tol) {
    require_model_features(model, phi);
    const Evaluation e = evaluate(model, phi, r.values());
    const std::size_t k = phi.cols();

    ActivePointReport rep;
    rep.column_participates.assign(k, false);
    rep.column_in_active_row.assign(k, false);
    rep.feasible = margin_from(e, model.num_states()) >= -1e-9;

    for (std::size_t s = 0; s < model.num_states(); ++s) {
        const bool active = e.values[s] - e.backed_up[s] <= tol;
        if (active) rep.active_rows.push_back(s);
        const auto row = phi.row(s);
        for (std::size_t j = 0; j < k; ++j) {
            if (row[j] + r[j] - e.values[s] <= tol) {
                rep.column_participates[j] = true;
                if (active) rep.column_in_active_row[j] = true;
            }
        }
    }
    auto all = [](const std::vector<bool>& v) {
        return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
    };
    rep.columns_participate = all(rep.column_participates);
    rep.has_active_row = !rep.active_rows.empty();
    rep.columns_in_active_rows = all(rep.column_in_active_row);
    return rep;
}

double objective(std::span<const double> c, const FeatureMatrix& phi, const WeightVector& r) {
    detail::require_same_size(c.size(), phi.rows(), "objective");
    for (double ci : c)
        if (!(ci > 0.0)) throw ValidationError("objective: c must be strictly positive");
    const MinPlusVector v = mp_matvec(phi, r);
    return eval_objective(c, v.values());
}

SolverResult mpadp_solve(const EvaluableModel& model, const FeatureMatrix& phi,
                         const SolverConfig& cfg) {
    return mpadp_solve_from(model, phi, feasible_init(model, phi), cfg);
}

SolverResult mpadp_solve_from(const EvaluableModel& model, const FeatureMatrix& phi,
                              WeightVector start, const SolverConfig& cfg) {
    require_model_features(model, phi);
    require_finite_features(phi);
    cfg.validate(model.num_states());
    detail::require_same_size(start.size(), phi.cols(), "mpadp_solve start");

    const std::size_t n = model.num_states();
    const std::vector<double> c = cfg.c.empty() ? uniform_weights(n) : cfg.c;
    const double threshold = cfg.epsilon > 0.0 ? cfg.epsilon : kZeroEpsilonSlack;

    SolverResult result;
    std::vector<double> r = start.to_vector();
    for (std::size_t it = 0;; ++it) {
        const Evaluation e = evaluate(model, phi, r);
        if (it == 0 && margin_from(e, n) < -1e-9)
            throw ValidationError("mpadp_solve: start point is not feasible");
        const std::vector<double> g = gradient_from(phi, r, e, n);
        const double norm = sup_norm(g);
        result.gradient_trace.push_back(norm);
        result.objective_trace.push_back(eval_objective(c, e.values));
        if (cfg.keep_iterates) result.iterates.emplace_back(r);

        if (norm <= threshold) {
            result.iterations = it;
            result.final_gradient_norm = norm;
            result.feasibility_margin = margin_from(e, n);
            result.objective = result.objective_trace.back();
            result.j_tilde = MinPlusVector(std::vector<double>(e.values.begin(), e.values.begin() + n));
            break;
        }
        if (it >= cfg.max_iter)
            throw NonConvergenceError("mpadp_solve: ||g||_inf = " + io::format_number(norm) +
                                          " after " + std::to_string(it) + " iterations",
                                      norm, result.gradient_trace);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= g[j];
    }
    result.r_opt = WeightVector(r);
    result.active_report = is_active_point(model, phi, result.r_opt, cfg.tolerance);
    result.active_point = result.active_report.holds();
    return result;
}

BoundReport bound_check(const ValueFunction& j_star, const FeatureMatrix& phi,
                        const ValueFunction& j_tilde, double alpha) {
    detail::require_same_size(j_star.size(), phi.rows(), "bound_check");
    detail::require_same_size(j_tilde.size(), phi.rows(), "bound_check");
    BoundReport rep;
    rep.lhs = sup_distance(j_star.values(), j_tilde.values());
    rep.best = best_approximation_error(phi, MinPlusVector(j_star.to_vector()));
    rep.bound = 2.0 / (1.0 - alpha) * rep.best;
    if (rep.best > 0.0)
        rep.ratio = rep.lhs / rep.best;
    else
        rep.ratio = rep.lhs > 0.0 ? kInfinity : 0.0;
    rep.violated = rep.lhs > rep.bound + 1e-6;
    return rep;
}

BoundReport bound_check(const ValueFunction& j_star, const FeatureMatrix& phi,
                        const WeightVector& r_opt, double alpha) {
    const MinPlusVector jt = mp_matvec(phi, r_opt);
    return bound_check(j_star, phi, ValueFunction(jt.to_vector()), alpha);
}

BruteForceResult brute_force_optimum(const EvaluableModel& model, const FeatureMatrix& phi,
                                     const GridSpec& grid, std::span<const double> c_in) {
    require_model_features(model, phi);
    const std::size_t k = phi.cols();
    if (k > 3) throw ValidationError("brute_force_optimum: k must be <= 3");
    detail::require_same_size(grid.lower.size(), k, "GridSpec lower");
    detail::require_same_size(grid.upper.size(), k, "GridSpec upper");
    if (grid.points_per_axis < 2) throw ValidationError("GridSpec: need >= 2 points per axis");

    const std::size_t n = model.num_states();
    const std::vector<double> c =
        c_in.empty() ? uniform_weights(n) : std::vector<double>(c_in.begin(), c_in.end());
    detail::require_same_size(c.size(), n, "brute_force_optimum c");

    std::vector<double> step(k);
    BruteForceResult out;
    for (std::size_t j = 0; j < k; ++j) {
        if (!(grid.upper[j] >= grid.lower[j])) throw ValidationError("GridSpec: upper < lower");
        step[j] = (grid.upper[j] - grid.lower[j]) / static_cast<double>(grid.points_per_axis - 1);
        out.resolution = std::max(out.resolution, step[j]);
    }

    std::vector<std::size_t> idx(k, 0);
    std::vector<double> r(k);
    std::vector<double> least(k, kInfinity);
    double best_objective = kInfinity;
    std::vector<double> best_point;
    std::size_t total = 1;
    for (std::size_t j = 0; j < k; ++j) total *= grid.points_per_axis;

    for (std::size_t count = 0; count < total; ++count) {
        for (std::size_t j = 0; j < k; ++j)
            r[j] = grid.lower[j] + static_cast<double>(idx[j]) * step[j];
        const Evaluation e = evaluate(model, phi, r);
        if (margin_from(e, n) >= -1e-9) {
            ++out.feasible_points;
            for (std::size_t j = 0; j < k; ++j) least[j] = std::min(least[j], r[j]);
            const double obj = eval_objective(c, e.values);
            if (obj < best_objective) {
                best_objective = obj;
                best_point = r;
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (++idx[j] < grid.points_per_axis) break;
            idx[j] = 0;
        }
    }
    if (out.feasible_points == 0)
        throw GridTooCoarseError("brute_force_optimum: no feasible point on the grid");

    // Feasible points are closed under component-wise min, so the least
    // feasible point exists and minimizes any positive objective.
    const Evaluation e = evaluate(model, phi, least);
    const double least_objective = eval_objective(c, e.values);
    const double scale = std::max(1.0, std::abs(best_objective));
    if (margin_from(e, n) < -1e-9 || least_objective > best_objective + 1e-12 * scale)
        throw std::logic_error("brute_force_optimum: component-wise minimum of the feasible grid "
                               "points is not the optimum");
    out.r = WeightVector(least);
    out.objective = least_objective;
    return out;
}

void write_solver_report(std::ostream& out, const SolverResult& result) {
    using io::format_number;
    out << "iterations = " << result.iterations << '\n'
        << "final_gradient_norm = " << format_number(result.final_gradient_norm) << '\n'
        << "feasibility_margin = " << format_number(result.feasibility_margin) << '\n'
        << "objective = " << format_number(result.objective) << '\n'
        << "active_point = " << (result.active_point ? "true" : "false") << '\n'
        << "columns_participate = " << (result.active_report.columns_participate ? "true" : "false")
        << '\n'
        << "has_active_row = " << (result.active_report.has_active_row ? "true" : "false") << '\n'
        << "columns_in_active_rows = "
        << (result.active_report.columns_in_active_rows ? "true" : "false") << '\n'
        << "feasible = " << (result.active_report.feasible ? "true" : "false") << '\n'
        << '\n'
        << "[r_opt]\n"
        << "feature,weight\n";
    for (std::size_t j = 0; j < result.r_opt.size(); ++j)
        out << (j + 1) << ',' << format_number(result.r_opt[j]) << '\n';
    out << '\n' << "[j_tilde]\n";
    io::write_value_csv(out, result.j_tilde.values());
}

} // namespace mpadp
