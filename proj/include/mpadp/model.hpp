#pragma once

#include "mpadp/mdp.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mpadp {

struct Transition {
    std::size_t point;
    double probability;
};

/// A finite set of evaluation states together with a one-step Bellman backup.
///
/// Values are supplied over *points*: points [0, num_states()) are the
/// evaluation states themselves, and any further points are successors that
/// are not evaluation states (e.g. the continuous next states of a
/// discretized system). A feature matrix used with a model has one row per
/// point.
///
/// The backup at evaluation state s of a value vector v over points is
///     max_a [ g(s) + α Σ_{(p, prob) ∈ succ(s,a)} prob · v(p) ].
class EvaluableModel {
public:
    /// `successors[s * num_actions + a]` lists the transitions of (s, a).
    EvaluableModel(std::size_t num_states, std::size_t num_points, std::size_t num_actions,
                   double discount, std::vector<double> rewards,
                   const std::vector<std::vector<Transition>>& successors);

    std::size_t num_states() const { return num_states_; }
    std::size_t num_points() const { return num_points_; }
    std::size_t num_actions() const { return num_actions_; }
    double discount() const { return discount_; }
    double reward(std::size_t s) const { return rewards_[s]; }

    std::span<const Transition> successors(std::size_t s, std::size_t a) const {
        const std::size_t idx = s * num_actions_ + a;
        return std::span<const Transition>(transitions_)
            .subspan(offsets_[idx], offsets_[idx + 1] - offsets_[idx]);
    }

    double action_value(std::size_t s, std::size_t a, std::span<const double> values) const;
    double backup(std::size_t s, std::span<const double> values) const;
    /// Backup at every evaluation state; result has num_states() entries.
    std::vector<double> backup_all(std::span<const double> values) const;

private:
    std::size_t num_states_;
    std::size_t num_points_;
    std::size_t num_actions_;
    double discount_;
    std::vector<double> rewards_;
    std::vector<std::size_t> offsets_;
    std::vector<Transition> transitions_;
};

/// The tabular MDP viewed as an evaluable model; points are its states and
/// zero-probability transitions are dropped.
EvaluableModel tabular_model(const TabularMdp& mdp);

} // namespace mpadp
