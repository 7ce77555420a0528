#include "mpadp/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mpadp {

EvaluableModel::EvaluableModel(std::size_t num_states, std::size_t num_points,
                               std::size_t num_actions, double discount,
                               std::vector<double> rewards,
                               const std::vector<std::vector<Transition>>& successors)
    : num_states_(num_states), num_points_(num_points), num_actions_(num_actions),
      discount_(discount), rewards_(std::move(rewards)) {
    if (num_states_ == 0 || num_actions_ == 0)
        throw ValidationError("EvaluableModel: need at least one state and one action");
    if (num_points_ < num_states_)
        throw ValidationError("EvaluableModel: evaluation states must be a prefix of the points");
    if (!(discount_ > 0.0 && discount_ < 1.0))
        throw ValidationError("EvaluableModel: discount must lie in (0, 1)");
    detail::require_same_size(rewards_.size(), num_states_, "EvaluableModel rewards");
    detail::require_same_size(successors.size(), num_states_ * num_actions_,
                              "EvaluableModel successors");

    offsets_.reserve(successors.size() + 1);
    offsets_.push_back(0);
    for (std::size_t idx = 0; idx < successors.size(); ++idx) {
        double total = 0.0;
        for (const Transition& t : successors[idx]) {
            if (t.point >= num_points_)
                throw ValidationError("EvaluableModel: successor point out of range");
            if (!(t.probability >= 0.0))
                throw ValidationError("EvaluableModel: negative transition probability");
            total += t.probability;
            transitions_.push_back(t);
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw ValidationError("EvaluableModel: transitions of (state " +
                                  std::to_string(idx / num_actions_ + 1) + ", action " +
                                  std::to_string(idx % num_actions_ + 1) + ") sum to " +
                                  std::to_string(total));
        offsets_.push_back(transitions_.size());
    }
}

double EvaluableModel::action_value(std::size_t s, std::size_t a,
                                    std::span<const double> values) const {
    double acc = 0.0;
    for (const Transition& t : successors(s, a)) acc += t.probability * values[t.point];
    return rewards_[s] + discount_ * acc;
}

double EvaluableModel::backup(std::size_t s, std::span<const double> values) const {
    detail::require_same_size(values.size(), num_points_, "EvaluableModel::backup");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < num_actions_; ++a) best = std::max(best, action_value(s, a, values));
    return best;
}

std::vector<double> EvaluableModel::backup_all(std::span<const double> values) const {
    detail::require_same_size(values.size(), num_points_, "EvaluableModel::backup_all");
    std::vector<double> out(num_states_);
    for (std::size_t s = 0; s < num_states_; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < num_actions_; ++a)
            best = std::max(best, action_value(s, a, values));
        out[s] = best;
    }
    return out;
}

EvaluableModel tabular_model(const TabularMdp& mdp) {
    const std::size_t n = mdp.num_states();
    const std::size_t d = mdp.num_actions();
    std::vector<std::vector<Transition>> successors(n * d);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < d; ++a) {
            const auto row = mdp.row(a, s);
            for (std::size_t t = 0; t < n; ++t)
                if (row[t] != 0.0) successors[s * d + a].push_back({t, row[t]});
        }
    return EvaluableModel(n, n, d, mdp.discount(),
                          std::vector<double>(mdp.reward().begin(), mdp.reward().end()),
                          successors);
}

} // namespace mpadp
