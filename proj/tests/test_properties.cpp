// Randomized property suites, 200+ cases each, fixed seeds.

#include "mpadp/mdp.hpp"
#include "mpadp/minplus.hpp"
#include "mpadp/model.hpp"
#include "mpadp/solver.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mpadp;
using namespace mpadp::oracle;

namespace {

constexpr int kCases = 250;

struct Instance {
    TabularMdp mdp;
    std::size_t n;
};

Instance draw_mdp(Rng& rng, std::size_t max_n = 6, std::size_t max_d = 3) {
    const std::size_t n = uniform_index(rng, 1, max_n);
    const std::size_t d = uniform_index(rng, 1, max_d);
    return {random_mdp(rng, n, d, uniform(rng, 0.05, 0.95)), n};
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("Bellman contraction") {
    Rng rng(1001);
    for (int t = 0; t < kCases; ++t) {
        const auto [m, n] = draw_mdp(rng);
        const ValueFunction a(random_vector(rng, n, -20, 20)), b(random_vector(rng, n, -20, 20));
        const double lhs = sup_distance(bellman_apply(m, a).values(), bellman_apply(m, b).values());
        CHECK(lhs <= m.discount() * sup_distance(a.values(), b.values()) + 1e-12);
    }
}

TEST_CASE("Bellman monotonicity") {
    Rng rng(1002);
    for (int t = 0; t < kCases; ++t) {
        const auto [m, n] = draw_mdp(rng);
        auto lo = random_vector(rng, n, -20, 20);
        auto hi = lo;
        for (auto& x : hi) x += uniform(rng, 0, 5);
        CHECK(dominates(bellman_apply(m, ValueFunction(hi)).values(),
                        bellman_apply(m, ValueFunction(lo)).values()));
    }
}

TEST_CASE("Bellman shift") {
    Rng rng(1003);
    for (int t = 0; t < kCases; ++t) {
        const auto [m, n] = draw_mdp(rng);
        auto j = random_vector(rng, n, -10, 10);
        const double kappa = uniform(rng, -10, 10);
        const auto base = bellman_apply(m, ValueFunction(j));
        for (auto& x : j) x += kappa;
        const auto shifted = bellman_apply(m, ValueFunction(j));
        for (std::size_t s = 0; s < n; ++s)
            CHECK(std::abs(shifted[s] - base[s] - m.discount() * kappa) <= 1e-12);
    }
}

TEST_CASE("projection dominance") {
    Rng rng(2001);
    for (int t = 0; t < kCases; ++t) {
        const std::size_t n = uniform_index(rng, 1, 8), k = uniform_index(rng, 1, 4);
        const auto phi = random_features(rng, n, k, -3, 3, 0.2);
        const MinPlusVector u(random_vector(rng, n, -5, 5));
        const auto p = mp_project(phi, u);
        CHECK(dominates(p.values(), u.values(), 1e-12));
        // every shifted column dominates u
        const auto r = mp_project_weights(phi, u);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) CHECK(phi(i, j) + r[j] >= u[i] - 1e-12);
    }
}

TEST_CASE("projection idempotence") {
    Rng rng(2002);
    for (int t = 0; t < kCases; ++t) {
        const std::size_t n = uniform_index(rng, 1, 8), k = uniform_index(rng, 1, 4);
        const auto phi = random_features(rng, n, k, -3, 3, 0.2);
        const auto p = mp_project(phi, MinPlusVector(random_vector(rng, n, -5, 5)));
        CHECK(sup_distance(mp_project(phi, p).values(), p.values()) <= 1e-12);
    }
}

TEST_CASE("projection monotonicity") {
    Rng rng(2003);
    for (int t = 0; t < kCases; ++t) {
        const std::size_t n = uniform_index(rng, 1, 8), k = uniform_index(rng, 1, 4);
        const auto phi = random_features(rng, n, k, -3, 3, 0.2);
        auto u = random_vector(rng, n, -5, 5);
        auto w = u;
        for (auto& x : w) x += uniform(rng, 0, 2);
        CHECK(dominates(mp_project(phi, MinPlusVector(w)).values(),
                        mp_project(phi, MinPlusVector(u)).values()));
    }
}

TEST_CASE("projection sup-norm non-expansive") {
    Rng rng(2004);
    for (int t = 0; t < kCases; ++t) {
        const std::size_t n = uniform_index(rng, 1, 8), k = uniform_index(rng, 1, 4);
        const auto phi = random_features(rng, n, k, -3, 3);
        const MinPlusVector u(random_vector(rng, n, -5, 5)), w(random_vector(rng, n, -5, 5));
        CHECK(sup_distance(mp_project(phi, u).values(), mp_project(phi, w).values()) <=
              sup_distance(u.values(), w.values()) + 1e-12);
    }
}

TEST_CASE("best approximation equals half the projection gap (grid search)") {
    Rng rng(2005);
    for (int t = 0; t < kCases; ++t) {
        const std::size_t n = uniform_index(rng, 1, 6), k = uniform_index(rng, 1, 2);
        const auto phi = random_features(rng, n, k, 0, 3);
        const auto u = random_vector(rng, n, -3, 3);
        const double identity = best_approximation_error(phi, MinPlusVector(u));
        // box guaranteed to contain r^u - δ/2 (see oracle comment)
        const double lo = -3 - 3 - (6 + 3) / 2.0, hi = 3 - 0;
        const auto grid = grid_best_approximation(phi, u, lo, hi, k == 1 ? 4001 : 301);
        CHECK(grid.value >= identity - 1e-9);
        CHECK(grid.value <= identity + grid.step / 2 + 1e-9);
        // the shifted minimizer attains the identity exactly
        auto r = mp_project_weights(phi, MinPlusVector(u)).to_vector();
        for (auto& x : r) x -= identity;
        CHECK(std::abs(sup_norm_diff(u, minplus_product(phi, r)) - identity) < 1e-12);
    }
}

TEST_CASE("solver iterates stay feasible and descend") {
    Rng rng(3001);
    for (int t = 0; t < kCases; ++t) {
        const auto [m, n] = draw_mdp(rng);
        const std::size_t k = uniform_index(rng, 1, 3);
        const auto model = tabular_model(m);
        const auto phi = random_features(rng, n, k, 0, 5);
        SolverConfig cfg;
        cfg.epsilon = 1e-8;
        cfg.keep_iterates = true;
        const auto res = mpadp_solve(model, phi, cfg);
        REQUIRE(res.iterates.size() == res.iterations + 1);
        for (std::size_t i = 0; i < res.iterates.size(); ++i) {
            CHECK(is_feasible(model, phi, res.iterates[i]));
            if (i > 0) {
                CHECK(dominates(res.iterates[i - 1].values(), res.iterates[i].values(), 1e-12));
                CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-12);
            }
        }
        CHECK(res.feasibility_margin >= -1e-9);
        CHECK(res.j_tilde == MinPlusVector(std::vector<double>(mp_matvec(phi, res.r_opt).to_vector())));
    }
}

TEST_CASE("converged runs over-approximate J*") {
    Rng rng(3002);
    for (int t = 0; t < kCases; ++t) {
        const auto [m, n] = draw_mdp(rng, 5, 3);
        const std::size_t k = uniform_index(rng, 1, 3);
        const auto phi = random_features(rng, n, k, 0, 5);
        SolverConfig cfg;
        cfg.epsilon = uniform(rng, 0, 1) < 0.5 ? 0.0 : 1e-6;
        const auto res = mpadp_solve(tabular_model(m), phi, cfg);
        const auto star = enumerate_optimal(m).value;
        CHECK(dominates(res.j_tilde.values(), star, 1e-9));
    }
}

TEST_CASE("active point at the exact optimum; any positive decrease is infeasible") {
    Rng rng(3003);
    for (int t = 0; t < kCases; ++t) {
        const auto [m, n] = draw_mdp(rng, 5, 2);
        const std::size_t k = uniform_index(rng, 1, 3);
        const auto model = tabular_model(m);
        const auto phi = random_features(rng, n, k, 0, 5);
        const auto res = mpadp_solve(model, phi);
        CHECK(res.active_point);
        auto lower = res.r_opt.to_vector();
        for (auto& x : lower) x -= uniform(rng, 1e-4, 1.0);
        CHECK_FALSE(is_feasible(model, phi, WeightVector(lower)));
    }
}

} // TEST_SUITE
