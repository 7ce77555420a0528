#pragma once

// Reference computations that share no code path with the library's
// algorithms: exact linear solves, policy enumeration, grid scans.

#include "mpadp/mdp.hpp"
#include "mpadp/minplus.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace mpadp::oracle {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Solves A x = b (A is n x n row-major) by Gaussian elimination with
/// partial pivoting.
inline std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-14) throw std::runtime_error("singular system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
        x[i] = s / a[i * n + i];
    }
    return x;
}

/// J_u from (I - α P_u) J = g.
inline std::vector<double> exact_policy_value(const TabularMdp& m, const std::vector<std::size_t>& u) {
    const std::size_t n = m.num_states();
    std::vector<double> a(n * n, 0.0);
    std::vector<double> b(m.reward().begin(), m.reward().end());
    for (std::size_t s = 0; s < n; ++s) {
        a[s * n + s] += 1.0;
        for (std::size_t t = 0; t < n; ++t) a[s * n + t] -= m.discount() * m.probability(u[s], s, t);
    }
    return solve_linear(std::move(a), std::move(b));
}

struct OptimalSolution {
    std::vector<double> value;
    std::vector<std::size_t> policy; // one optimal deterministic policy
};

/// J* as the component-wise max of J_u over all d^n deterministic policies.
inline OptimalSolution enumerate_optimal(const TabularMdp& m) {
    const std::size_t n = m.num_states(), d = m.num_actions();
    std::vector<std::size_t> u(n, 0);
    OptimalSolution best{std::vector<double>(n, -std::numeric_limits<double>::infinity()), u};
    double best_sum = -std::numeric_limits<double>::infinity();
    while (true) {
        const auto j = exact_policy_value(m, u);
        double sum = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            best.value[s] = std::max(best.value[s], j[s]);
            sum += j[s];
        }
        if (sum > best_sum) {
            best_sum = sum;
            best.policy = u;
        }
        std::size_t s = 0;
        while (s < n && ++u[s] == d) u[s++] = 0;
        if (s == n) break;
    }
    return best;
}

/// Random MDP with some zero transition probabilities.
inline TabularMdp random_mdp(Rng& rng, std::size_t n, std::size_t d, double alpha,
                             double reward_lo = -5.0, double reward_hi = 10.0) {
    std::vector<double> p(d * n * n);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t s = 0; s < n; ++s) {
            double sum = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                double w = uniform(rng, 0.0, 1.0);
                if (w < 0.3) w = 0.0;
                p[(a * n + s) * n + t] = w;
                sum += w;
            }
            if (sum == 0.0) {
                p[(a * n + s) * n + uniform_index(rng, 0, n - 1)] = 1.0;
                continue;
            }
            for (std::size_t t = 0; t < n; ++t) p[(a * n + s) * n + t] /= sum;
            // Push the rounding residue onto the largest entry.
            double total = 0.0;
            std::size_t big = 0;
            for (std::size_t t = 0; t < n; ++t) {
                total += p[(a * n + s) * n + t];
                if (p[(a * n + s) * n + t] > p[(a * n + s) * n + big]) big = t;
            }
            p[(a * n + s) * n + big] += 1.0 - total;
        }
    }
    std::vector<double> g(n);
    for (auto& x : g) x = uniform(rng, reward_lo, reward_hi);
    return TabularMdp(n, d, std::move(p), std::move(g), alpha);
}

/// Random finite feature matrix; with inf_rate > 0 some entries are +inf,
/// but every column keeps at least one finite entry.
inline FeatureMatrix random_features(Rng& rng, std::size_t rows, std::size_t cols, double lo,
                                     double hi, double inf_rate = 0.0) {
    std::vector<double> data(rows * cols);
    for (auto& x : data) x = uniform(rng, 0.0, 1.0) < inf_rate ? kInfinity : uniform(rng, lo, hi);
    for (std::size_t j = 0; j < cols; ++j) {
        bool finite = false;
        for (std::size_t i = 0; i < rows; ++i) finite = finite || std::isfinite(data[i * cols + j]);
        if (!finite) data[uniform_index(rng, 0, rows - 1) * cols + j] = uniform(rng, lo, hi);
    }
    return FeatureMatrix(rows, cols, std::move(data));
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(rng, lo, hi);
    return v;
}

/// (Φ⊗r)(i) computed directly.
inline std::vector<double> minplus_product(const FeatureMatrix& phi, const std::vector<double>& r) {
    std::vector<double> out(phi.rows(), kInfinity);
    for (std::size_t i = 0; i < phi.rows(); ++i)
        for (std::size_t j = 0; j < phi.cols(); ++j) out[i] = std::min(out[i], phi(i, j) + r[j]);
    return out;
}

inline double sup_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

struct GridMin {
    double value;
    double step;
};

/// min over a uniform grid of r in [lo, hi]^k of ||u - Φ⊗r||_inf, for a
/// finite Φ and k <= 2. The true minimum lies in [value - step/2, value]
/// whenever a minimizer is inside the box.
inline GridMin grid_best_approximation(const FeatureMatrix& phi, const std::vector<double>& u,
                                       double lo, double hi, std::size_t points) {
    const std::size_t k = phi.cols();
    if (k > 2) throw std::invalid_argument("grid_best_approximation: k <= 2");
    const double step = (hi - lo) / static_cast<double>(points - 1);
    const std::size_t total = k == 1 ? points : points * points;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> r(k);
    for (std::size_t c = 0; c < total; ++c) {
        r[0] = lo + static_cast<double>(c % points) * step;
        if (k == 2) r[1] = lo + static_cast<double>(c / points) * step;
        best = std::min(best, sup_norm_diff(u, minplus_product(phi, r)));
    }
    return {best, step};
}

} // namespace mpadp::oracle
