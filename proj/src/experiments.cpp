#include "mpadp/experiments.hpp"
#include "mpadp/errors.hpp"
#include "mpadp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace mpadp {

namespace {

using io::format_number;

std::size_t parse_count(const std::string& key, const std::string& value) {
    const double v = io::parse_number(value);
    if (v < 0 || v != std::floor(v) || v > 1e15)
        throw ValidationError(key + " must be a non-negative integer, got '" + value + "'");
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::string& value) {
    std::string s = value;
    std::erase(s, '(');
    std::erase(s, ')');
    std::replace(s.begin(), s.end(), ' ', ',');
    std::vector<double> out;
    for (const auto& f : io::split(s, ','))
        if (!io::trim(f).empty()) out.push_back(io::parse_number(f));
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    return out;
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

struct GridSolve {
    GridRun run;
    SolverResult result;
    ValueFunction j_tilde;
    ValueFunction j_greedy;
    Policy greedy;
};

GridSolve solve_grid(const TabularMdp& mdp, const EvaluableModel& model, const GridWorldSpec& spec,
                     std::size_t k, const ExperimentConfig& cfg, const ValueFunction& j_star_q,
                     const Policy& optimal) {
    const FeatureMatrix phi = gridworld_features(spec, k);
    SolverConfig scfg;
    scfg.epsilon = cfg.resolved_epsilon();
    scfg.max_iter = cfg.max_iter;
    SolverResult res = mpadp_solve(model, phi, scfg);

    const ValueFunction j_tilde(res.j_tilde.to_vector());
    const Policy greedy = greedy_policy(mdp, j_tilde);
    const ValueFunction j_greedy = policy_value(mdp, greedy, cfg.tol, cfg.max_iter);

    // Metrics come from the values exactly as they are written out.
    const ValueFunction jt_q(io::quantize(j_tilde.values()));
    const ValueFunction jg_q(io::quantize(j_greedy.values()));

    GridRun run;
    run.k = k;
    run.iterations = res.iterations;
    run.bound = bound_check(j_star_q, phi, jt_q, mdp.discount());
    run.subopt = suboptimality_gap(j_star_q, jt_q, jg_q, mdp.discount());
    run.approx_error = run.subopt.approximation_error;
    run.greedy_error = run.subopt.greedy_error;
    for (std::size_t s = 0; s < greedy.size(); ++s)
        if (greedy[s] == optimal[s]) ++run.action_matches;
    run.upper_bound_holds = dominates(jt_q.values(), j_star_q.values(), 1e-9);
    run.feasibility_margin = res.feasibility_margin;
    return {run, std::move(res), j_tilde, j_greedy, greedy};
}

void write_error_table(const std::filesystem::path& path, const std::vector<GridRun>& runs) {
    auto out = open_out(path);
    out << "k,iterations,approx_error,greedy_error,best_error,bound,subopt_bound,action_matches,"
           "upper_bound_holds\n";
    for (const auto& r : runs)
        out << r.k << ',' << r.iterations << ',' << format_number(r.approx_error) << ','
            << format_number(r.greedy_error) << ',' << format_number(r.bound.best) << ','
            << format_number(r.bound.bound) << ',' << format_number(r.subopt.bound) << ','
            << r.action_matches << ',' << yes_no(r.upper_bound_holds) << '\n';
}

void write_report_file(const ExperimentConfig& cfg, ExperimentReport& report) {
    report.files.push_back("report.txt");
    auto out = open_out(cfg.out_dir / "report.txt");
    report.write(out);
}

} // namespace

std::string to_string(Experiment e) {
    switch (e) {
    case Experiment::GridWorld: return "gridworld";
    case Experiment::MountainCar: return "mountaincar";
    case Experiment::FenchelDemo: return "fenchel-demo";
    case Experiment::Exact: return "exact";
    }
    return "unknown";
}

Experiment parse_experiment(const std::string& name) {
    if (name == "gridworld") return Experiment::GridWorld;
    if (name == "mountaincar") return Experiment::MountainCar;
    if (name == "fenchel-demo") return Experiment::FenchelDemo;
    if (name == "exact") return Experiment::Exact;
    throw ValidationError("unknown experiment '" + name + "'");
}

double ExperimentConfig::resolved_alpha() const {
    if (alpha) return *alpha;
    switch (experiment) {
    case Experiment::MountainCar: return 0.95;
    case Experiment::Exact: return env == "m2" ? 0.5 : 0.9;
    default: return 0.9;
    }
}

std::size_t ExperimentConfig::resolved_k() const {
    if (k) return *k;
    return experiment == Experiment::MountainCar ? 5 : 10;
}

double ExperimentConfig::resolved_epsilon() const {
    if (epsilon) return *epsilon;
    return experiment == Experiment::MountainCar ? 1e-5 : 0.0;
}

void ExperimentConfig::set(std::string key, const std::string& value) {
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string v = io::trim(value);
    if (key == "experiment") {
        if (parse_experiment(v) != experiment)
            throw ValidationError("config file is for experiment '" + v + "', not '" +
                                  to_string(experiment) + "'");
    } else if (key == "alpha") {
        alpha = io::parse_number(v);
    } else if (key == "k") {
        k = parse_count(key, v);
    } else if (key == "k1") {
        k1 = parse_count(key, v);
    } else if (key == "beta") {
        beta = io::parse_number(v);
    } else if (key == "gamma") {
        gamma = io::parse_number(v);
    } else if (key == "epsilon") {
        epsilon = io::parse_number(v);
    } else if (key == "tol") {
        tol = io::parse_number(v);
    } else if (key == "max_iter") {
        max_iter = parse_count(key, v);
    } else if (key == "max_steps") {
        max_steps = parse_count(key, v);
    } else if (key == "start") {
        const auto xy = parse_list(v);
        if (xy.size() != 2) throw ValidationError("start must be 'x,y', got '" + v + "'");
        start = {xy[0], xy[1]};
    } else if (key == "dynamics") {
        if (v == "literal") dynamics = CarDynamics::Literal;
        else if (v == "standard") dynamics = CarDynamics::Standard;
        else throw ValidationError("dynamics must be 'literal' or 'standard', got '" + v + "'");
    } else if (key == "out_dir") {
        out_dir = v;
    } else if (key == "rewards") {
        rewards = std::filesystem::path(v);
    } else if (key == "env") {
        env = v;
    } else if (key == "sweep") {
        sweep.clear();
        if (v != "none")
            for (double x : parse_list(v)) sweep.push_back(parse_count("sweep", format_number(x)));
    } else {
        throw ValidationError("unknown option '" + key + "'");
    }
}

void ExperimentConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (io::trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
        set(io::trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

void ExperimentConfig::validate() const {
    const double a = resolved_alpha();
    if (!(a > 0.0 && a < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    const double eps = resolved_epsilon();
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw ValidationError("epsilon must be finite and >= 0");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ValidationError("tol must be positive");
    if (max_iter == 0) throw ValidationError("max_iter must be >= 1");
    switch (experiment) {
    case Experiment::GridWorld:
        if (resolved_k() == 0) throw ValidationError("k must be >= 1");
        for (std::size_t s : sweep)
            if (s == 0) throw ValidationError("sweep values must be >= 1");
        gridworld_spec().validate();
        break;
    case Experiment::MountainCar: {
        const auto spec = mountain_car_spec();
        spec.validate();
        if (!spec.in_range(start)) throw ValidationError("start lies outside the mountain-car ranges");
        break;
    }
    case Experiment::Exact:
        if (env != "gridworld" && env != "m2")
            throw ValidationError("env must be 'gridworld' or 'm2', got '" + env + "'");
        if (env == "gridworld") gridworld_spec().validate();
        break;
    case Experiment::FenchelDemo: break;
    }
}

GridWorldSpec ExperimentConfig::gridworld_spec() const {
    if (rewards) return GridWorldSpec::from_csv(*rewards, resolved_alpha());
    GridWorldSpec spec;
    spec.discount = resolved_alpha();
    return spec;
}

MountainCarSpec ExperimentConfig::mountain_car_spec() const {
    MountainCarSpec spec;
    spec.discount = resolved_alpha();
    spec.k = resolved_k();
    spec.k1 = k1;
    spec.beta = beta;
    spec.gamma = gamma;
    spec.dynamics = dynamics;
    return spec;
}

void ExperimentReport::write(std::ostream& out) const {
    out << "experiment = " << to_string(experiment) << '\n';
    if (experiment != Experiment::FenchelDemo) out << "alpha = " << format_number(alpha) << '\n';
    switch (experiment) {
    case Experiment::GridWorld:
        if (!grid_runs.empty()) {
            const GridRun& r = grid_runs.front();
            out << "k = " << r.k << '\n'
                << "solver_iterations = " << r.iterations << '\n'
                << "approx_error = " << format_number(r.approx_error) << '\n'
                << "greedy_error = " << format_number(r.greedy_error) << '\n'
                << "best_error = " << format_number(r.bound.best) << '\n'
                << "bound = " << format_number(r.bound.bound) << '\n'
                << "bound_ratio = " << format_number(r.bound.ratio) << '\n'
                << "bound_violated = " << yes_no(r.bound.violated) << '\n'
                << "subopt_bound = " << format_number(r.subopt.bound) << '\n'
                << "subopt_violated = " << yes_no(r.subopt.violated) << '\n'
                << "action_matches = " << r.action_matches << '\n'
                << "upper_bound_holds = " << yes_no(r.upper_bound_holds) << '\n'
                << "feasibility_margin = " << format_number(r.feasibility_margin) << '\n';
        }
        break;
    case Experiment::MountainCar:
        out << "solver_iterations = " << solver_iterations << '\n'
            << "v_max = " << format_number(v_max) << '\n'
            << "v_min = " << format_number(v_min) << '\n'
            << "reached_goal = " << yes_no(steps_to_goal.has_value()) << '\n'
            << "steps_to_goal = " << (steps_to_goal ? std::to_string(*steps_to_goal) : "none") << '\n';
        break;
    case Experiment::FenchelDemo:
        for (std::size_t j = 0; j < weights.size(); ++j)
            out << "r" << (j + 1) << " = " << format_number(weights[j]) << '\n';
        out << "min_gap = " << format_number(min_gap) << '\n'
            << "value_at_zero = " << format_number(value_at_zero) << '\n';
        break;
    case Experiment::Exact:
        out << "v_max = " << format_number(v_max) << '\n' << "v_min = " << format_number(v_min) << '\n';
        break;
    }
    out << "files =";
    for (const auto& f : files) out << ' ' << f;
    out << '\n';
}

ExperimentReport run_gridworld(const ExperimentConfig& cfg) {
    if (cfg.experiment != Experiment::GridWorld) throw ValidationError("run_gridworld: wrong experiment");
    cfg.validate();
    prepare_dir(cfg.out_dir);
    const GridWorldSpec spec = cfg.gridworld_spec();
    const TabularMdp mdp = build_gridworld(spec);
    const EvaluableModel model = tabular_model(mdp);

    const ValueFunction j_star = value_iteration(mdp, cfg.tol, cfg.max_iter);
    const Policy optimal = greedy_policy(mdp, j_star);
    const ValueFunction j_star_q(io::quantize(j_star.values()));

    ExperimentReport report;
    report.experiment = Experiment::GridWorld;
    report.alpha = mdp.discount();

    const std::size_t k = cfg.resolved_k();
    GridSolve main = solve_grid(mdp, model, spec, k, cfg, j_star_q, optimal);
    report.grid_runs.push_back(main.run);
    report.solver_iterations = main.run.iterations;
    report.weights = main.result.r_opt.to_vector();
    for (std::size_t ks : cfg.sweep) {
        if (ks == k) continue;
        report.grid_runs.push_back(solve_grid(mdp, model, spec, ks, cfg, j_star_q, optimal).run);
    }

    const auto& dir = cfg.out_dir;
    io::write_value_csv(dir / "j_star.csv", j_star.values());
    io::write_value_csv(dir / "j_tilde.csv", main.j_tilde.values());
    io::write_value_csv(dir / "j_greedy.csv", main.j_greedy.values());
    io::write_policy_csv(dir / "policy_optimal.csv", optimal);
    io::write_policy_csv(dir / "policy_greedy.csv", main.greedy);
    {
        auto out = open_out(dir / "solver_result.txt");
        write_solver_report(out, main.result);
    }
    write_error_table(dir / "error_table.csv", report.grid_runs);
    report.files = {"j_star.csv",         "j_tilde.csv",       "j_greedy.csv",   "policy_optimal.csv",
                    "policy_greedy.csv", "solver_result.txt", "error_table.csv"};
    write_report_file(cfg, report);
    return report;
}

ExperimentReport run_mountaincar(const ExperimentConfig& cfg) {
    if (cfg.experiment != Experiment::MountainCar)
        throw ValidationError("run_mountaincar: wrong experiment");
    cfg.validate();
    prepare_dir(cfg.out_dir);
    const MountainCarSpec spec = cfg.mountain_car_spec();
    const CarModel cm = mc_model(spec);

    SolverConfig scfg;
    scfg.epsilon = cfg.resolved_epsilon();
    scfg.max_iter = cfg.max_iter;
    const SolverResult res = mpadp_solve(cm.model, cm.features, scfg);

    ExperimentReport report;
    report.experiment = Experiment::MountainCar;
    report.alpha = spec.discount;
    report.solver_iterations = res.iterations;
    report.weights = res.r_opt.to_vector();

    const auto values = io::quantize(res.j_tilde.values());
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    report.v_max = *hi;
    report.v_min = *lo;
    {
        auto out = open_out(cfg.out_dir / "value_heatmap.csv");
        out << "meta,V_max," << format_number(report.v_max) << ",V_min," << format_number(report.v_min)
            << '\n';
        for (std::size_t i = 0; i < spec.k1; ++i) {
            for (std::size_t j = 0; j < spec.k1; ++j)
                out << (j ? "," : "") << format_number(values[i * spec.k1 + j]);
            out << '\n';
        }
    }

    const Rollout roll = rollout(spec, greedy_car_policy(spec, res.r_opt), cfg.start, cfg.max_steps);
    report.steps_to_goal = roll.steps_to_goal;
    {
        auto out = open_out(cfg.out_dir / "trajectory.csv");
        out << "step,x,y,action\n";
        for (std::size_t t = 0; t < roll.states.size(); ++t) {
            out << t << ',' << format_number(roll.states[t].x) << ',' << format_number(roll.states[t].y)
                << ',';
            if (t < roll.actions.size()) out << roll.actions[t];
            out << '\n';
        }
    }
    {
        auto out = open_out(cfg.out_dir / "solver_result.txt");
        write_solver_report(out, res);
    }
    report.files = {"value_heatmap.csv", "trajectory.csv", "solver_result.txt"};
    write_report_file(cfg, report);
    return report;
}

ExperimentReport run_fenchel_demo(const ExperimentConfig& cfg) {
    cfg.validate();
    prepare_dir(cfg.out_dir);
    constexpr std::size_t kSamples = 201;
    const std::vector<double> centers{-0.8, -0.4, 0.0, 0.4, 0.8};
    std::vector<double> x(kSamples), f(kSamples);
    std::vector<double> data(kSamples * centers.size());
    for (std::size_t i = 0; i < kSamples; ++i) {
        x[i] = (static_cast<double>(i) - 100.0) / 100.0;
        f[i] = x[i] * x[i];
        for (std::size_t j = 0; j < centers.size(); ++j)
            data[i * centers.size() + j] = 2.0 * std::abs(x[i] - centers[j]);
    }
    const FeatureMatrix phi(kSamples, centers.size(), std::move(data));
    const WeightVector r = mp_project_weights(phi, MinPlusVector(f));
    const MinPlusVector approx = mp_matvec(phi, r);

    ExperimentReport report;
    report.experiment = Experiment::FenchelDemo;
    report.weights = r.to_vector();
    const auto fq = io::quantize(f);
    const auto aq = io::quantize(approx.values());
    report.min_gap = kInfinity;
    for (std::size_t i = 0; i < kSamples; ++i) report.min_gap = std::min(report.min_gap, aq[i] - fq[i]);
    report.value_at_zero = aq[100];

    io::write_dat(cfg.out_dir / "f.dat", x, f);
    io::write_dat(cfg.out_dir / "fproj.dat", x, approx.values());
    report.files = {"f.dat", "fproj.dat"};
    for (std::size_t j = 0; j < centers.size(); ++j) {
        std::vector<double> curve(kSamples);
        for (std::size_t i = 0; i < kSamples; ++i) curve[i] = phi(i, j) + r[j];
        const std::string name = "f" + std::to_string(j + 1) + ".dat";
        io::write_dat(cfg.out_dir / name, x, curve);
        report.files.push_back(name);
    }
    write_report_file(cfg, report);
    return report;
}

ExperimentReport run_exact(const ExperimentConfig& cfg) {
    if (cfg.experiment != Experiment::Exact) throw ValidationError("run_exact: wrong experiment");
    cfg.validate();
    prepare_dir(cfg.out_dir);
    const TabularMdp mdp =
        cfg.env == "m2" ? two_state_swap(cfg.resolved_alpha()) : build_gridworld(cfg.gridworld_spec());
    const ValueFunction j_star = value_iteration(mdp, cfg.tol, cfg.max_iter);
    const Policy optimal = greedy_policy(mdp, j_star);

    ExperimentReport report;
    report.experiment = Experiment::Exact;
    report.alpha = mdp.discount();
    const auto q = io::quantize(j_star.values());
    report.v_max = *std::max_element(q.begin(), q.end());
    report.v_min = *std::min_element(q.begin(), q.end());
    io::write_value_csv(cfg.out_dir / "j_star.csv", j_star.values());
    io::write_policy_csv(cfg.out_dir / "policy_optimal.csv", optimal);
    report.files = {"j_star.csv", "policy_optimal.csv"};
    write_report_file(cfg, report);
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
    case Experiment::GridWorld: return run_gridworld(cfg);
    case Experiment::MountainCar: return run_mountaincar(cfg);
    case Experiment::FenchelDemo: return run_fenchel_demo(cfg);
    case Experiment::Exact: return run_exact(cfg);
    }
    throw ValidationError("unknown experiment");
}

Heatmap read_heatmap(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty heatmap");
    const auto meta = io::split(io::trim(line), ',');
    if (meta.size() != 5 || meta[0] != "meta" || meta[1] != "V_max" || meta[3] != "V_min")
        throw ValidationError(path.string() + ": expected 'meta,V_max,<v>,V_min,<v>'");
    Heatmap h;
    h.v_max = io::parse_number(meta[2]);
    h.v_min = io::parse_number(meta[4]);
    while (std::getline(in, line)) {
        if (io::trim(line).empty()) continue;
        std::vector<double> row;
        for (const auto& f : io::split(line, ',')) row.push_back(io::parse_number(f));
        if (!h.values.empty() && row.size() != h.values.front().size())
            throw ValidationError(path.string() + ": ragged heatmap row");
        h.values.push_back(std::move(row));
    }
    if (h.values.size() < 2 || h.values.size() != h.values.front().size())
        throw ValidationError(path.string() + ": heatmap must be a square grid");
    return h;
}

} // namespace mpadp
