#include "mpadp/gridworld.hpp"
#include "mpadp/io.hpp"

#include <algorithm>
#include <string>

namespace mpadp {

std::vector<std::vector<int>> GridWorldSpec::default_rewards() {
    return {
        {2, 5, 9, 5, 8, 3, 6, 10, 7, 3},  {10, 10, 7, 1, 4, 4, 3, 8, 4, 4},
        {1, 2, 4, 10, 3, 9, 8, 5, 9, 5},  {8, 3, 6, 10, 5, 1, 2, 5, 6, 3},
        {9, 2, 5, 5, 1, 1, 7, 5, 4, 9},   {9, 2, 1, 5, 2, 2, 2, 4, 10, 2},
        {1, 9, 3, 4, 10, 7, 4, 6, 9, 3},  {4, 6, 2, 10, 10, 8, 7, 6, 6, 2},
        {3, 6, 2, 4, 6, 7, 8, 9, 7, 3},   {9, 2, 3, 2, 1, 5, 1, 8, 6, 5},
    };
}

GridWorldSpec GridWorldSpec::from_csv(const std::filesystem::path& path, double discount) {
    GridWorldSpec spec;
    spec.rewards = io::read_int_grid_csv(path);
    spec.discount = discount;
    spec.validate();
    return spec;
}

void GridWorldSpec::validate() const {
    if (rewards.size() != kGridSide)
        throw ValidationError("grid world rewards must have 10 rows");
    for (const auto& row : rewards)
        if (row.size() != kGridSide) throw ValidationError("grid world rewards must have 10 columns");
    if (!(slip >= 0.0 && slip <= 1.0)) throw ValidationError("slip probability must lie in [0, 1]");
    if (!(discount > 0.0 && discount < 1.0)) throw ValidationError("discount must lie in (0, 1)");
}

std::size_t encode_state(std::size_t i, std::size_t j) {
    if (i < 1 || i > kGridSide || j < 1 || j > kGridSide)
        throw ValidationError("encode_state: (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is outside the 10x10 grid");
    return (i - 1) * kGridSide + j;
}

TabularMdp build_gridworld(const GridWorldSpec& spec) {
    spec.validate();
    const std::size_t n = kGridSide * kGridSide;
    std::vector<double> p(kGridActions * n * n, 0.0);
    std::vector<double> g(n);
    const int side = static_cast<int>(kGridSide);
    for (int i = 1; i <= side; ++i) {
        for (int j = 1; j <= side; ++j) {
            const std::size_t s = encode_state(i, j) - 1;
            g[s] = spec.reward_at(i, j);
            for (std::size_t a = 0; a < kGridActions; ++a) {
                const int ti = i + kGridMoves[a][0];
                const int tj = j + kGridMoves[a][1];
                const bool inside = ti >= 1 && ti <= side && tj >= 1 && tj <= side;
                const std::size_t t = inside ? encode_state(ti, tj) - 1 : s;
                p[(a * n + s) * n + s] += spec.slip;
                p[(a * n + s) * n + t] += 1.0 - spec.slip;
            }
        }
    }
    return TabularMdp(n, kGridActions, std::move(p), std::move(g), spec.discount);
}

std::size_t reward_partition(double g, double g_min, double g_max, std::size_t k) {
    if (k == 0) throw ValidationError("partition count must be >= 1");
    const double width = (g_max - g_min) / static_cast<double>(k);
    std::size_t bin = 0;
    if (!(width > 0.0)) return bin;
    for (std::size_t i = 1; i < k; ++i)
        if (g >= g_min + static_cast<double>(i) * width) bin = i;
    return bin;
}

FeatureMatrix gridworld_features(const GridWorldSpec& spec, std::size_t k) {
    spec.validate();
    if (k == 0) throw ValidationError("partition count must be >= 1");
    const std::size_t n = kGridSide * kGridSide;
    std::vector<double> g(n);
    for (std::size_t i = 1; i <= kGridSide; ++i)
        for (std::size_t j = 1; j <= kGridSide; ++j) g[encode_state(i, j) - 1] = spec.reward_at(i, j);
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    std::vector<double> data(n * k, kFeatureSentinel);
    for (std::size_t s = 0; s < n; ++s) data[s * k + reward_partition(g[s], *lo, *hi, k)] = 0.0;
    return FeatureMatrix(n, k, std::move(data));
}

} // namespace mpadp
