#pragma once

// 10x10 stochastic grid world with 8 compass actions and reward-partition
// features.

#include "mpadp/mdp.hpp"
#include "mpadp/minplus.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace mpadp {

inline constexpr std::size_t kGridSide = 10;
inline constexpr std::size_t kGridActions = 8;

/// Stand-in for +inf in grid-world features.
inline constexpr double kFeatureSentinel = 1000.0;

/// Action a (0-based) moves by kGridMoves[a] = (Δi, Δj), i being the x index
/// of the state encoding: N, NE, E, SE, S, SW, W, NW.
inline constexpr std::array<std::array<int, 2>, kGridActions> kGridMoves{{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1},
}};

struct GridWorldSpec {
    /// rewards[row][col]: row r is y_{r+1}, column c is x_{c+1}, as laid out
    /// in the reference reward table. Defaults to that table.
    std::vector<std::vector<int>> rewards = default_rewards();
    double slip = 0.1;
    double discount = 0.9;

    static std::vector<std::vector<int>> default_rewards();
    static GridWorldSpec from_csv(const std::filesystem::path& path, double discount);

    void validate() const;
    /// Reward of the cell (x_i, y_j), 1-based.
    int reward_at(std::size_t i, std::size_t j) const { return rewards[j - 1][i - 1]; }
};

/// s = (i-1)·10 + j for 1 <= i, j <= 10 (1-based state index).
std::size_t encode_state(std::size_t i, std::size_t j);

/// p_a(s,s) = slip, p_a(s,t) = 1 - slip for the intended cell t; moves off
/// the grid stay put. g(s) is the reward of the cell of s.
TabularMdp build_gridworld(const GridWorldSpec& spec);

/// Partition index (0-based) of reward value g among k equal-width bins on
/// [g_min, g_max]; bins are half-open on the right except the last.
std::size_t reward_partition(double g, double g_min, double g_max, std::size_t k);

/// φ^s(i) = 0 if g(s) falls in bin i, kFeatureSentinel otherwise.
FeatureMatrix gridworld_features(const GridWorldSpec& spec, std::size_t k);

} // namespace mpadp
