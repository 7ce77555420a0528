#pragma once

// Deterministic mountain car, distance-power features over a k x k grid of
// centers, and a k1 x k1 evaluation discretization.

#include "mpadp/minplus.hpp"
#include "mpadp/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mpadp {

/// How the position update uses velocity.
enum class CarDynamics {
    Literal,  // x' = x + y (velocity before the update)
    Standard, // x' = x + y' (velocity after the update and clamp)
};

struct CarState {
    double x = -0.5; // position
    double y = 0.0;  // velocity
};

struct MountainCarSpec {
    static constexpr double kXMin = -1.2;
    static constexpr double kXMax = 0.5;
    static constexpr double kYMin = -0.07;
    static constexpr double kYMax = 0.07;
    static constexpr std::size_t kActions = 3;

    double discount = 0.95;
    std::size_t k = 5;
    std::size_t k1 = 30;
    double beta = 100.0;
    double gamma = 2.0;
    double goal_reward = 100.0;
    double step_reward = 0.0;
    CarDynamics dynamics = CarDynamics::Literal;

    void validate() const;
    bool in_range(CarState s) const;
    bool is_goal(CarState s) const { return s.x >= kXMax; }
    double reward(CarState s) const { return is_goal(s) ? goal_reward : step_reward; }
};

struct CarStep {
    CarState next;
    double reward = 0.0;
    bool done = false;
};

/// One step with action a in {0, 1, 2} (reverse, coast, forward).
/// Velocity and position are clamped to their ranges; at the left wall a
/// negative velocity is zeroed.
CarStep mc_step(const MountainCarSpec& spec, CarState s, std::size_t a);

/// φ(i,j) = |β(x_n - c_i)|^γ + |β(y_n - c_j)|^γ with x_n, y_n the state
/// normalized to [0,1] and c = linspace(0, 1, k). Column index i·k + j.
class CarFeatures {
public:
    explicit CarFeatures(const MountainCarSpec& spec);

    std::size_t size() const { return k_ * k_; }
    void fill(CarState s, std::span<double> out) const;
    std::vector<double> operator()(CarState s) const;

private:
    std::size_t k_;
    double beta_;
    double gamma_;
    std::vector<double> centers_;
};

CarFeatures mc_features(const MountainCarSpec& spec);

/// k1 x k1 uniform grid over the state box, endpoints included; state
/// index i·k1 + j for position index i and velocity index j.
std::vector<CarState> mc_grid(const MountainCarSpec& spec);

struct CarModel {
    EvaluableModel model;
    /// All points of the model: the grid states, then one continuous
    /// successor per (non-goal grid state, action).
    std::vector<CarState> points;
    FeatureMatrix features;
};

/// Goal grid states are self-absorbing; every other grid state moves
/// deterministically to the continuous successor of each action.
CarModel mc_model(const MountainCarSpec& spec);

using CarPolicy = std::function<std::size_t(CarState)>;

/// argmax_a [g(s) + α J̃(next(s, a))], lowest action index on ties, with
/// J̃ = Φ⊗r evaluated at the continuous next state.
CarPolicy greedy_car_policy(const MountainCarSpec& spec, const WeightVector& r);

struct Rollout {
    std::vector<CarState> states; // visited states, start first
    std::vector<std::size_t> actions;
    std::optional<std::size_t> steps_to_goal; // empty if max_steps ran out
};

Rollout rollout(const MountainCarSpec& spec, const CarPolicy& policy, CarState start,
                std::size_t max_steps);

} // namespace mpadp
