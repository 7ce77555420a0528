#pragma once

// Min-plus (tropical) semiring R_min = (R ∪ {+inf}, min, +), the semimodule
// R_min^n, and the projection onto the span of a feature matrix.

#include "mpadp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <initializer_list>
#include <vector>

namespace mpadp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A scalar of R_min. The default value is +inf, the additive identity.
struct MinPlus {
    double value = kInfinity;

    constexpr MinPlus() = default;
    constexpr MinPlus(double v) : value(v) {} // NOLINT(google-explicit-constructor)

    static constexpr MinPlus zero() { return MinPlus{kInfinity}; }
    static constexpr MinPlus unit() { return MinPlus{0.0}; }

    constexpr bool is_infinite() const { return value == kInfinity; }

    friend constexpr bool operator==(MinPlus, MinPlus) = default;
};

/// x ⊕ y = min(x, y)
constexpr MinPlus mp_add(MinPlus x, MinPlus y) { return MinPlus{std::min(x.value, y.value)}; }

/// x ⊗ y = x + y, with +inf absorbing (never NaN).
constexpr MinPlus mp_mul(MinPlus x, MinPlus y) {
    if (x.is_infinite() || y.is_infinite()) return MinPlus::zero();
    return MinPlus{x.value + y.value};
}

constexpr MinPlus operator+(MinPlus x, MinPlus y) { return mp_add(x, y); }
constexpr MinPlus operator*(MinPlus x, MinPlus y) { return mp_mul(x, y); }

/// An element of R_min^n. Length is fixed at construction; entries are
/// finite or +inf (NaN and -inf are rejected).
class MinPlusVector {
public:
    MinPlusVector() = default;
    explicit MinPlusVector(std::vector<double> entries);
    MinPlusVector(std::initializer_list<double> entries) : MinPlusVector(std::vector<double>(entries)) {}
    MinPlusVector(std::size_t n, double fill) : MinPlusVector(std::vector<double>(n, fill)) {}

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    std::span<const double> values() const { return entries_; }
    const std::vector<double>& to_vector() const { return entries_; }
    bool all_finite() const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const MinPlusVector&, const MinPlusVector&) = default;

private:
    std::vector<double> entries_;
};

/// Component-wise u >= v.
bool dominates(std::span<const double> u, std::span<const double> v, double tol = 0.0);

/// Weights r in R^k. Every entry finite.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<double> entries);
    WeightVector(std::initializer_list<double> entries) : WeightVector(std::vector<double>(entries)) {}
    WeightVector(std::size_t k, double fill) : WeightVector(std::vector<double>(k, fill)) {}

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t j) const { return entries_[j]; }
    std::span<const double> values() const { return entries_; }
    const std::vector<double>& to_vector() const { return entries_; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<double> entries_;
};

/// n x k matrix Φ whose columns φ_j span the approximation subsemimodule.
/// Stored row-major so that rows φ^i are contiguous.
class FeatureMatrix {
public:
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);
    /// Diagonal 0, off-diagonal +inf.
    static FeatureMatrix tropical_identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }
    std::vector<double> column(std::size_t j) const;
    std::span<const double> data() const { return data_; }
    bool all_finite() const;

    /// The first `count` rows as a new matrix.
    FeatureMatrix top_rows(std::size_t count) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// min_j (row(j) + r(j)); +inf only when every row entry is +inf.
double mp_row_product(std::span<const double> row, std::span<const double> r);

/// Φ ⊗ r
MinPlusVector mp_matvec(const FeatureMatrix& phi, const WeightVector& r);

/// <u, v> = min_i (u(i) + v(i))
MinPlus mp_dot(const MinPlusVector& u, const MinPlusVector& v);
MinPlus mp_dot(std::span<const double> u, std::span<const double> v);

/// Min-transform weights r^u(j) = -min_i (φ_j(i) - u(i)). Every shifted
/// column φ_j + r^u(j) dominates u.
///
/// Throws DegenerateBasisError when a column has no finite entry at a row
/// where u is finite, or is finite where u is +inf (it would need a +inf
/// weight to dominate u there).
WeightVector mp_project_weights(const FeatureMatrix& phi, const MinPlusVector& u);

/// Π_M u = Φ ⊗ r^u, the least element of span(Φ) dominating u.
MinPlusVector mp_project(const FeatureMatrix& phi, const MinPlusVector& u);

/// min_r ||u - Φ⊗r||_inf for finite u, computed as ||Π_M u - u||_inf / 2.
double best_approximation_error(const FeatureMatrix& phi, const MinPlusVector& u);

/// Per-column participation at r = 0. A column that is never the unique row
/// minimizer is flagged as possibly redundant. This is a heuristic: it cannot
/// prove or refute min-plus linear independence.
struct IndependenceReport {
    std::vector<bool> participates;     // attains some row minimum
    std::vector<bool> unique_minimizer; // sole minimizer of some row
    std::vector<std::size_t> flagged() const;
    bool all_unique() const;
};

IndependenceReport independence_diagnostic(const FeatureMatrix& phi);

/// max_i |a(i) - b(i)| over equal-length finite vectors.
double sup_distance(std::span<const double> a, std::span<const double> b);

} // namespace mpadp
