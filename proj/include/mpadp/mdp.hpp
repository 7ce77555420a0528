#pragma once

// Finite discounted-reward MDPs with state-only rewards g(s).

#include "mpadp/errors.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mpadp {

/// Value function J over states 0..n-1. All entries finite.
class ValueFunction {
public:
    ValueFunction() = default;
    explicit ValueFunction(std::vector<double> values);
    static ValueFunction zeros(std::size_t n) { return ValueFunction(std::vector<double>(n, 0.0)); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t s) const { return values_[s]; }
    std::span<const double> values() const { return values_; }
    const std::vector<double>& to_vector() const { return values_; }

    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    friend bool operator==(const ValueFunction&, const ValueFunction&) = default;

private:
    std::vector<double> values_;
};

/// Deterministic stationary policy. Actions are stored 0-based; they are
/// written 1-based to CSV.
class Policy {
public:
    Policy() = default;
    explicit Policy(std::vector<std::size_t> actions) : actions_(std::move(actions)) {}

    std::size_t size() const { return actions_.size(); }
    std::size_t operator[](std::size_t s) const { return actions_[s]; }
    const std::vector<std::size_t>& actions() const { return actions_; }

    friend bool operator==(const Policy&, const Policy&) = default;

private:
    std::vector<std::size_t> actions_;
};

class TabularMdp {
public:
    /// `transitions` is d x n x n, flattened as [a][s][s'].
    TabularMdp(std::size_t states, std::size_t actions, std::vector<double> transitions,
               std::vector<double> reward, double discount);

    /// Nested form transitions[a][s][s'].
    TabularMdp(const std::vector<std::vector<std::vector<double>>>& transitions,
               std::vector<double> reward, double discount);

    std::size_t num_states() const { return n_; }
    std::size_t num_actions() const { return d_; }
    double discount() const { return alpha_; }
    std::span<const double> reward() const { return reward_; }

    double probability(std::size_t a, std::size_t s, std::size_t t) const {
        return p_[(a * n_ + s) * n_ + t];
    }
    std::span<const double> row(std::size_t a, std::size_t s) const {
        return std::span<const double>(p_).subspan((a * n_ + s) * n_, n_);
    }

    /// g(s) + α Σ_t p_a(s,t) j(t)
    double action_value(std::size_t s, std::size_t a, std::span<const double> j) const;

private:
    void validate() const;

    std::size_t n_;
    std::size_t d_;
    std::vector<double> p_;
    std::vector<double> reward_;
    double alpha_;
};

/// (TJ)(s) = max_a [g(s) + α Σ p_a(s,s') J(s')]
ValueFunction bellman_apply(const TabularMdp& m, const ValueFunction& j);

/// (T_u J)(s) = g(s) + α Σ p_{u(s)}(s,s') J(s')
ValueFunction bellman_policy_apply(const TabularMdp& m, const Policy& u, const ValueFunction& j);

/// Iterates T from zero until ||TJ - J||_inf <= tol and returns the last TJ,
/// which is within tol·α/(1-α) of J*. Throws NonConvergenceError after
/// max_iter sweeps.
ValueFunction value_iteration(const TabularMdp& m, double tol, std::size_t max_iter = 1'000'000);

/// argmax_a of the one-step backup, lowest action index on ties.
Policy greedy_policy(const TabularMdp& m, const ValueFunction& j);

/// Fixed point of T_u by iteration from zero.
ValueFunction policy_value(const TabularMdp& m, const Policy& u, double tol,
                           std::size_t max_iter = 1'000'000);

/// Errors of an approximation J̃ and of its greedy policy against J*, with the
/// 2/(1-α)·||J* - J̃|| bound on the greedy policy's loss.
struct SuboptimalityReport {
    double approximation_error = 0.0; // ||J* - J̃||_inf
    double greedy_error = 0.0;        // ||J* - J_ũ||_inf
    double bound = 0.0;               // 2/(1-α) ||J* - J̃||_inf
    bool violated = false;            // greedy_error > bound + 1e-6
};

SuboptimalityReport suboptimality_gap(const ValueFunction& j_star, const ValueFunction& j_tilde,
                                      const ValueFunction& j_greedy, double alpha);

/// Two states, one action, deterministic swap 1->2, 2->1, g = (1, 0).
/// J* = (1, α) / (1 - α²); (4/3, 2/3) at the default α = 0.5.
TabularMdp two_state_swap(double alpha = 0.5);

} // namespace mpadp
