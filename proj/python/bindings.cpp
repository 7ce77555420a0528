#include "mpadp/errors.hpp"
#include "mpadp/experiments.hpp"
#include "mpadp/gridworld.hpp"
#include "mpadp/mdp.hpp"
#include "mpadp/minplus.hpp"
#include "mpadp/model.hpp"
#include "mpadp/mountain_car.hpp"
#include "mpadp/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <sstream>

namespace py = pybind11;
using namespace mpadp;

namespace {

std::vector<double> list(const MinPlusVector& v) { return v.to_vector(); }
std::vector<double> list(const WeightVector& v) { return v.to_vector(); }
std::vector<double> list(const ValueFunction& v) { return v.to_vector(); }

SolverConfig solver_config(double epsilon, std::size_t max_iter, std::vector<double> c) {
    SolverConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_iter = max_iter;
    cfg.c = std::move(c);
    return cfg;
}

CarDynamics parse_dynamics(const std::string& s) {
    if (s == "literal") return CarDynamics::Literal;
    if (s == "standard") return CarDynamics::Standard;
    throw ValidationError("dynamics must be 'literal' or 'standard'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Min-plus approximate dynamic programming";

    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);
    py::register_exception<GridTooCoarseError>(m, "GridTooCoarseError", PyExc_RuntimeError);

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def(py::init(&FeatureMatrix::from_rows), py::arg("rows"))
        .def_property_readonly("rows", &FeatureMatrix::rows)
        .def_property_readonly("cols", &FeatureMatrix::cols)
        .def("__call__", [](const FeatureMatrix& phi, std::size_t i, std::size_t j) { return phi(i, j); })
        .def("to_list", [](const FeatureMatrix& phi) {
            std::vector<std::vector<double>> out(phi.rows());
            for (std::size_t i = 0; i < phi.rows(); ++i) {
                const auto row = phi.row(i);
                out[i].assign(row.begin(), row.end());
            }
            return out;
        });

    m.def("mp_matvec", [](const FeatureMatrix& phi, std::vector<double> r) {
        return list(mp_matvec(phi, WeightVector(std::move(r))));
    }, py::arg("phi"), py::arg("r"));
    m.def("mp_project_weights", [](const FeatureMatrix& phi, std::vector<double> u) {
        return list(mp_project_weights(phi, MinPlusVector(std::move(u))));
    }, py::arg("phi"), py::arg("u"));
    m.def("mp_project", [](const FeatureMatrix& phi, std::vector<double> u) {
        return list(mp_project(phi, MinPlusVector(std::move(u))));
    }, py::arg("phi"), py::arg("u"));
    m.def("best_approximation_error", [](const FeatureMatrix& phi, std::vector<double> u) {
        return best_approximation_error(phi, MinPlusVector(std::move(u)));
    }, py::arg("phi"), py::arg("u"));

    py::class_<TabularMdp>(m, "TabularMdp")
        .def(py::init<const std::vector<std::vector<std::vector<double>>>&, std::vector<double>, double>(),
             py::arg("transitions"), py::arg("reward"), py::arg("discount"))
        .def_property_readonly("num_states", &TabularMdp::num_states)
        .def_property_readonly("num_actions", &TabularMdp::num_actions)
        .def_property_readonly("discount", &TabularMdp::discount)
        .def("probability", &TabularMdp::probability, py::arg("a"), py::arg("s"), py::arg("t"));

    m.def("bellman_apply", [](const TabularMdp& mdp, std::vector<double> j) {
        return list(bellman_apply(mdp, ValueFunction(std::move(j))));
    }, py::arg("mdp"), py::arg("j"));
    m.def("value_iteration", [](const TabularMdp& mdp, double tol, std::size_t max_iter) {
        return list(value_iteration(mdp, tol, max_iter));
    }, py::arg("mdp"), py::arg("tol") = 1e-10, py::arg("max_iter") = 1'000'000);
    m.def("greedy_policy", [](const TabularMdp& mdp, std::vector<double> j) {
        return greedy_policy(mdp, ValueFunction(std::move(j))).actions();
    }, py::arg("mdp"), py::arg("j"));
    m.def("policy_value", [](const TabularMdp& mdp, std::vector<std::size_t> u, double tol) {
        return list(policy_value(mdp, Policy(std::move(u)), tol));
    }, py::arg("mdp"), py::arg("policy"), py::arg("tol") = 1e-10);

    py::class_<EvaluableModel>(m, "EvaluableModel")
        .def_property_readonly("num_states", &EvaluableModel::num_states)
        .def_property_readonly("num_points", &EvaluableModel::num_points)
        .def_property_readonly("num_actions", &EvaluableModel::num_actions)
        .def_property_readonly("discount", &EvaluableModel::discount);
    m.def("tabular_model", &tabular_model, py::arg("mdp"));

    py::class_<SolverResult>(m, "SolverResult")
        .def_property_readonly("r_opt", [](const SolverResult& r) { return list(r.r_opt); })
        .def_property_readonly("j_tilde", [](const SolverResult& r) { return list(r.j_tilde); })
        .def_readonly("iterations", &SolverResult::iterations)
        .def_readonly("final_gradient_norm", &SolverResult::final_gradient_norm)
        .def_readonly("feasibility_margin", &SolverResult::feasibility_margin)
        .def_readonly("objective", &SolverResult::objective)
        .def_readonly("active_point", &SolverResult::active_point)
        .def_readonly("gradient_trace", &SolverResult::gradient_trace)
        .def("report", [](const SolverResult& r) {
            std::ostringstream out;
            write_solver_report(out, r);
            return out.str();
        });

    m.def("solve", [](const EvaluableModel& model, const FeatureMatrix& phi, double epsilon,
                      std::size_t max_iter, std::vector<double> c) {
        return mpadp_solve(model, phi, solver_config(epsilon, max_iter, std::move(c)));
    }, py::arg("model"), py::arg("phi"), py::arg("epsilon") = 0.0, py::arg("max_iter") = 1'000'000,
          py::arg("c") = std::vector<double>{});
    m.def("solve", [](const TabularMdp& mdp, const FeatureMatrix& phi, double epsilon,
                      std::size_t max_iter, std::vector<double> c) {
        return mpadp_solve(tabular_model(mdp), phi, solver_config(epsilon, max_iter, std::move(c)));
    }, py::arg("mdp"), py::arg("phi"), py::arg("epsilon") = 0.0, py::arg("max_iter") = 1'000'000,
          py::arg("c") = std::vector<double>{});
    m.def("feasible_init", [](const EvaluableModel& model, const FeatureMatrix& phi) {
        return list(feasible_init(model, phi));
    }, py::arg("model"), py::arg("phi"));
    m.def("is_feasible", [](const EvaluableModel& model, const FeatureMatrix& phi, std::vector<double> r) {
        return is_feasible(model, phi, WeightVector(std::move(r)));
    }, py::arg("model"), py::arg("phi"), py::arg("r"));

    m.def("gridworld", [](double alpha) {
        GridWorldSpec spec;
        spec.discount = alpha;
        return build_gridworld(spec);
    }, py::arg("alpha") = 0.9);
    m.def("gridworld_features", [](std::size_t k) { return gridworld_features(GridWorldSpec{}, k); },
          py::arg("k") = 10);
    m.def("encode_state", &encode_state, py::arg("i"), py::arg("j"));

    m.def("mountain_car_step", [](double x, double y, std::size_t a, const std::string& dynamics) {
        MountainCarSpec spec;
        spec.dynamics = parse_dynamics(dynamics);
        const auto s = mc_step(spec, CarState{x, y}, a);
        return py::make_tuple(s.next.x, s.next.y, s.reward, s.done);
    }, py::arg("x"), py::arg("y"), py::arg("action"), py::arg("dynamics") = "literal");
    m.def("mountain_car_model", [](std::size_t k, std::size_t k1, double alpha, double beta, double gamma,
                                   const std::string& dynamics) {
        MountainCarSpec spec;
        spec.k = k;
        spec.k1 = k1;
        spec.discount = alpha;
        spec.beta = beta;
        spec.gamma = gamma;
        spec.dynamics = parse_dynamics(dynamics);
        auto car = mc_model(spec);
        return py::make_tuple(std::move(car.model), std::move(car.features));
    }, py::arg("k") = 5, py::arg("k1") = 30, py::arg("alpha") = 0.95, py::arg("beta") = 100.0,
          py::arg("gamma") = 2.0, py::arg("dynamics") = "literal");

    m.def("run_experiment", [](const std::string& name, const std::map<std::string, std::string>& options) {
        ExperimentConfig cfg;
        cfg.experiment = parse_experiment(name);
        for (const auto& [key, value] : options) cfg.set(key, value);
        const auto report = run_experiment(cfg);
        std::ostringstream out;
        report.write(out);
        return out.str();
    }, py::arg("name"), py::arg("options") = std::map<std::string, std::string>{});
}
