#include "mpadp/mdp.hpp"
#include "mpadp/minplus.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mpadp {

ValueFunction::ValueFunction(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("ValueFunction: entries must be finite");
}

TabularMdp::TabularMdp(std::size_t states, std::size_t actions, std::vector<double> transitions,
                       std::vector<double> reward, double discount)
    : n_(states), d_(actions), p_(std::move(transitions)), reward_(std::move(reward)),
      alpha_(discount) {
    validate();
}

namespace {
std::vector<double> flatten(const std::vector<std::vector<std::vector<double>>>& t,
                            std::size_t& n) {
    if (t.empty() || t.front().empty()) throw ValidationError("TabularMdp: empty transitions");
    n = t.front().size();
    std::vector<double> flat;
    flat.reserve(t.size() * n * n);
    for (const auto& pa : t) {
        detail::require_same_size(pa.size(), n, "TabularMdp transitions");
        for (const auto& r : pa) {
            detail::require_same_size(r.size(), n, "TabularMdp transitions");
            flat.insert(flat.end(), r.begin(), r.end());
        }
    }
    return flat;
}
} // namespace

TabularMdp::TabularMdp(const std::vector<std::vector<std::vector<double>>>& transitions,
                       std::vector<double> reward, double discount)
    : n_(0), d_(transitions.size()), reward_(std::move(reward)), alpha_(discount) {
    p_ = flatten(transitions, n_);
    validate();
}

void TabularMdp::validate() const {
    if (n_ == 0 || d_ == 0) throw ValidationError("TabularMdp: need at least one state and action");
    if (p_.size() != d_ * n_ * n_)
        throw DimensionError("TabularMdp: transition tensor must have d*n*n entries");
    detail::require_same_size(reward_.size(), n_, "TabularMdp reward");
    if (!(alpha_ > 0.0 && alpha_ < 1.0))
        throw ValidationError("TabularMdp: discount must lie in (0, 1)");
    for (double g : reward_)
        if (!std::isfinite(g)) throw ValidationError("TabularMdp: rewards must be finite");
    for (std::size_t a = 0; a < d_; ++a) {
        for (std::size_t s = 0; s < n_; ++s) {
            double sum = 0.0;
            for (double p : row(a, s)) {
                if (!(p >= 0.0)) throw ValidationError("TabularMdp: negative transition probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw ValidationError("TabularMdp: row (action " + std::to_string(a + 1) +
                                      ", state " + std::to_string(s + 1) + ") sums to " +
                                      std::to_string(sum));
        }
    }
}

double TabularMdp::action_value(std::size_t s, std::size_t a, std::span<const double> j) const {
    const auto p = row(a, s);
    double acc = 0.0;
    for (std::size_t t = 0; t < n_; ++t)
        if (p[t] != 0.0) acc += p[t] * j[t];
    return reward_[s] + alpha_ * acc;
}

ValueFunction bellman_apply(const TabularMdp& m, const ValueFunction& j) {
    detail::require_same_size(j.size(), m.num_states(), "bellman_apply");
    std::vector<double> out(m.num_states());
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < m.num_actions(); ++a)
            best = std::max(best, m.action_value(s, a, j.values()));
        out[s] = best;
    }
    return ValueFunction(std::move(out));
}

ValueFunction bellman_policy_apply(const TabularMdp& m, const Policy& u, const ValueFunction& j) {
    detail::require_same_size(j.size(), m.num_states(), "bellman_policy_apply");
    detail::require_same_size(u.size(), m.num_states(), "bellman_policy_apply policy");
    std::vector<double> out(m.num_states());
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        if (u[s] >= m.num_actions()) throw ValidationError("Policy: action index out of range");
        out[s] = m.action_value(s, u[s], j.values());
    }
    return ValueFunction(std::move(out));
}

ValueFunction value_iteration(const TabularMdp& m, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw ValidationError("value_iteration: tol must be positive");
    ValueFunction j = ValueFunction::zeros(m.num_states());
    double residual = kInfinity;
    std::vector<double> trace;
    for (std::size_t it = 0; it < max_iter; ++it) {
        ValueFunction next = bellman_apply(m, j);
        residual = sup_distance(next.values(), j.values());
        trace.push_back(residual);
        j = std::move(next);
        if (residual <= tol) return j;
    }
    throw NonConvergenceError("value_iteration: no convergence after " + std::to_string(max_iter) +
                                  " iterations",
                              residual, std::move(trace));
}

Policy greedy_policy(const TabularMdp& m, const ValueFunction& j) {
    detail::require_same_size(j.size(), m.num_states(), "greedy_policy");
    std::vector<std::size_t> actions(m.num_states(), 0);
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        double best = m.action_value(s, 0, j.values());
        for (std::size_t a = 1; a < m.num_actions(); ++a) {
            const double q = m.action_value(s, a, j.values());
            if (q > best) {
                best = q;
                actions[s] = a;
            }
        }
    }
    return Policy(std::move(actions));
}

ValueFunction policy_value(const TabularMdp& m, const Policy& u, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw ValidationError("policy_value: tol must be positive");
    ValueFunction j = ValueFunction::zeros(m.num_states());
    double residual = kInfinity;
    std::vector<double> trace;
    for (std::size_t it = 0; it < max_iter; ++it) {
        ValueFunction next = bellman_policy_apply(m, u, j);
        residual = sup_distance(next.values(), j.values());
        trace.push_back(residual);
        j = std::move(next);
        if (residual <= tol) return j;
    }
    throw NonConvergenceError("policy_value: no convergence after " + std::to_string(max_iter) +
                                  " iterations",
                              residual, std::move(trace));
}

SuboptimalityReport suboptimality_gap(const ValueFunction& j_star, const ValueFunction& j_tilde,
                                      const ValueFunction& j_greedy, double alpha) {
    SuboptimalityReport r;
    r.approximation_error = sup_distance(j_star.values(), j_tilde.values());
    r.greedy_error = sup_distance(j_star.values(), j_greedy.values());
    r.bound = 2.0 / (1.0 - alpha) * r.approximation_error;
    r.violated = r.greedy_error > r.bound + 1e-6;
    return r;
}

TabularMdp two_state_swap(double alpha) {
    return TabularMdp(2, 1, {0.0, 1.0, 1.0, 0.0}, {1.0, 0.0}, alpha);
}

} // namespace mpadp
