#include "mpadp/mountain_car.hpp"
#include "mpadp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpadp {

namespace {

std::vector<double> linspace01(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace

void MountainCarSpec::validate() const {
    if (!(discount > 0.0 && discount < 1.0)) throw ValidationError("discount must lie in (0, 1)");
    if (k < 2) throw ValidationError("mountain car needs k >= 2");
    if (k1 < 2) throw ValidationError("mountain car needs k1 >= 2");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be positive");
    if (!(gamma > 1.0) || !std::isfinite(gamma)) throw ValidationError("gamma must exceed 1");
    if (!std::isfinite(goal_reward) || !std::isfinite(step_reward))
        throw ValidationError("rewards must be finite");
}

bool MountainCarSpec::in_range(CarState s) const {
    return s.x >= kXMin && s.x <= kXMax && s.y >= kYMin && s.y <= kYMax;
}

CarStep mc_step(const MountainCarSpec& spec, CarState s, std::size_t a) {
    if (a >= MountainCarSpec::kActions)
        throw ValidationError("mountain car action must be 0, 1 or 2, got " + std::to_string(a));
    if (!spec.in_range(s)) throw ValidationError("mountain car state outside its ranges");

    double y = s.y + 0.001 * (static_cast<double>(a) - 1.0) - 0.0025 * std::cos(3.0 * s.x);
    y = std::clamp(y, MountainCarSpec::kYMin, MountainCarSpec::kYMax);
    double x = s.x + (spec.dynamics == CarDynamics::Literal ? s.y : y);
    x = std::clamp(x, MountainCarSpec::kXMin, MountainCarSpec::kXMax);
    if (x <= MountainCarSpec::kXMin && y < 0.0) y = 0.0;

    CarStep out;
    out.next = {x, y};
    out.done = spec.is_goal(out.next);
    out.reward = out.done ? spec.goal_reward : spec.step_reward;
    return out;
}

CarFeatures::CarFeatures(const MountainCarSpec& spec)
    : k_(spec.k), beta_(spec.beta), gamma_(spec.gamma), centers_(linspace01(spec.k)) {
    spec.validate();
}

void CarFeatures::fill(CarState s, std::span<double> out) const {
    detail::require_same_size(out.size(), size(), "CarFeatures::fill");
    const double xn = (s.x - MountainCarSpec::kXMin) / (MountainCarSpec::kXMax - MountainCarSpec::kXMin);
    const double yn = (s.y - MountainCarSpec::kYMin) / (MountainCarSpec::kYMax - MountainCarSpec::kYMin);
    std::vector<double> fx(k_), fy(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        fx[i] = std::pow(std::abs(beta_ * (xn - centers_[i])), gamma_);
        fy[i] = std::pow(std::abs(beta_ * (yn - centers_[i])), gamma_);
    }
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j) out[i * k_ + j] = fx[i] + fy[j];
}

std::vector<double> CarFeatures::operator()(CarState s) const {
    std::vector<double> row(size());
    fill(s, row);
    return row;
}

CarFeatures mc_features(const MountainCarSpec& spec) { return CarFeatures(spec); }

std::vector<CarState> mc_grid(const MountainCarSpec& spec) {
    spec.validate();
    const auto t = linspace01(spec.k1);
    std::vector<CarState> grid;
    grid.reserve(spec.k1 * spec.k1);
    for (double tx : t)
        for (double ty : t)
            grid.push_back({MountainCarSpec::kXMin + tx * (MountainCarSpec::kXMax - MountainCarSpec::kXMin),
                            MountainCarSpec::kYMin + ty * (MountainCarSpec::kYMax - MountainCarSpec::kYMin)});
    return grid;
}

CarModel mc_model(const MountainCarSpec& spec) {
    std::vector<CarState> points = mc_grid(spec);
    const std::size_t n = points.size();
    const std::size_t d = MountainCarSpec::kActions;
    std::vector<double> rewards(n);
    std::vector<std::vector<Transition>> succ(n * d);
    for (std::size_t s = 0; s < n; ++s) {
        const CarState st = points[s];
        rewards[s] = spec.reward(st);
        for (std::size_t a = 0; a < d; ++a) {
            if (spec.is_goal(st)) {
                succ[s * d + a] = {{s, 1.0}};
            } else {
                succ[s * d + a] = {{points.size(), 1.0}};
                points.push_back(mc_step(spec, st, a).next);
            }
        }
    }
    const CarFeatures phi(spec);
    std::vector<double> data(points.size() * phi.size());
    for (std::size_t p = 0; p < points.size(); ++p)
        phi.fill(points[p], std::span<double>(data).subspan(p * phi.size(), phi.size()));
    const std::size_t num_points = points.size();
    return CarModel{EvaluableModel(n, num_points, d, spec.discount, std::move(rewards), succ),
                    std::move(points), FeatureMatrix(num_points, phi.size(), std::move(data))};
}

CarPolicy greedy_car_policy(const MountainCarSpec& spec, const WeightVector& r) {
    const CarFeatures phi(spec);
    detail::require_same_size(r.size(), phi.size(), "greedy_car_policy");
    return [spec, phi, r](CarState s) {
        std::vector<double> row(phi.size());
        std::size_t best_a = 0;
        double best = -kInfinity;
        for (std::size_t a = 0; a < MountainCarSpec::kActions; ++a) {
            phi.fill(mc_step(spec, s, a).next, row);
            const double q = spec.reward(s) + spec.discount * mp_row_product(row, r.values());
            if (q > best) {
                best = q;
                best_a = a;
            }
        }
        return best_a;
    };
}

Rollout rollout(const MountainCarSpec& spec, const CarPolicy& policy, CarState start,
                std::size_t max_steps) {
    if (!spec.in_range(start)) throw ValidationError("rollout start outside the state ranges");
    Rollout out;
    out.states.push_back(start);
    if (spec.is_goal(start)) {
        out.steps_to_goal = 0;
        return out;
    }
    CarState s = start;
    for (std::size_t t = 1; t <= max_steps; ++t) {
        const std::size_t a = policy(s);
        const CarStep step = mc_step(spec, s, a);
        out.actions.push_back(a);
        out.states.push_back(step.next);
        s = step.next;
        if (step.done) {
            out.steps_to_goal = t;
            break;
        }
    }
    return out;
}

} // namespace mpadp
