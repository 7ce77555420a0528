#include "mpadp/minplus.hpp"

#include <string>

namespace mpadp {

namespace {

void check_entry(double v, const char* what) {
    if (std::isnan(v)) throw ValidationError(std::string(what) + ": NaN entry");
    if (v == -kInfinity) throw ValidationError(std::string(what) + ": -inf entry");
}

} // namespace

MinPlusVector::MinPlusVector(std::vector<double> entries) : entries_(std::move(entries)) {
    for (double v : entries_) check_entry(v, "MinPlusVector");
}

bool MinPlusVector::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

bool dominates(std::span<const double> u, std::span<const double> v, double tol) {
    detail::require_same_size(u.size(), v.size(), "dominates");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < v[i] - tol) return false;
    return true;
}

WeightVector::WeightVector(std::vector<double> entries) : entries_(std::move(entries)) {
    for (double v : entries_)
        if (!std::isfinite(v)) throw ValidationError("WeightVector: entries must be finite");
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (rows_ == 0 || cols_ == 0) throw ValidationError("FeatureMatrix: need n >= 1 and k >= 1");
    if (data_.size() != rows_ * cols_)
        throw DimensionError("FeatureMatrix: expected " + std::to_string(rows_ * cols_) +
                             " entries, got " + std::to_string(data_.size()));
    for (double v : data_) check_entry(v, "FeatureMatrix");
    for (std::size_t j = 0; j < cols_; ++j) {
        bool any_finite = false;
        for (std::size_t i = 0; i < rows_ && !any_finite; ++i)
            any_finite = std::isfinite((*this)(i, j));
        if (!any_finite)
            throw ValidationError("FeatureMatrix: column " + std::to_string(j + 1) +
                                  " has no finite entry");
    }
}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ValidationError("FeatureMatrix: no rows");
    const std::size_t k = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * k);
    for (const auto& r : rows) {
        detail::require_same_size(r.size(), k, "FeatureMatrix::from_rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return FeatureMatrix(rows.size(), k, std::move(data));
}

FeatureMatrix FeatureMatrix::tropical_identity(std::size_t n) {
    std::vector<double> data(n * n, kInfinity);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 0.0;
    return FeatureMatrix(n, n, std::move(data));
}

std::vector<double> FeatureMatrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

bool FeatureMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

FeatureMatrix FeatureMatrix::top_rows(std::size_t count) const {
    if (count > rows_) throw DimensionError("FeatureMatrix::top_rows: not enough rows");
    return FeatureMatrix(count, cols_,
                         std::vector<double>(data_.begin(), data_.begin() + count * cols_));
}

double mp_row_product(std::span<const double> row, std::span<const double> r) {
    double best = kInfinity;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == kInfinity) continue;
        best = std::min(best, row[j] + r[j]);
    }
    return best;
}

MinPlusVector mp_matvec(const FeatureMatrix& phi, const WeightVector& r) {
    detail::require_same_size(r.size(), phi.cols(), "mp_matvec");
    std::vector<double> out(phi.rows());
    for (std::size_t i = 0; i < phi.rows(); ++i) out[i] = mp_row_product(phi.row(i), r.values());
    return MinPlusVector(std::move(out));
}

MinPlus mp_dot(std::span<const double> u, std::span<const double> v) {
    detail::require_same_size(u.size(), v.size(), "mp_dot");
    MinPlus acc = MinPlus::zero();
    for (std::size_t i = 0; i < u.size(); ++i) acc = acc + MinPlus{u[i]} * MinPlus{v[i]};
    return acc;
}

MinPlus mp_dot(const MinPlusVector& u, const MinPlusVector& v) {
    return mp_dot(u.values(), v.values());
}

WeightVector mp_project_weights(const FeatureMatrix& phi, const MinPlusVector& u) {
    detail::require_same_size(u.size(), phi.rows(), "mp_project_weights");
    std::vector<double> r(phi.cols());
    for (std::size_t j = 0; j < phi.cols(); ++j) {
        double m = kInfinity;
        for (std::size_t i = 0; i < phi.rows(); ++i) {
            const double p = phi(i, j);
            if (p == kInfinity) continue;
            if (u[i] == kInfinity)
                throw DegenerateBasisError("mp_project_weights: column " + std::to_string(j + 1) +
                                           " is finite where u is +inf");
            m = std::min(m, p - u[i]);
        }
        if (m == kInfinity)
            throw DegenerateBasisError("mp_project_weights: column " + std::to_string(j + 1) +
                                       " has no finite entry to compare with u");
        r[j] = 0.0 - m;
    }
    return WeightVector(std::move(r));
}

MinPlusVector mp_project(const FeatureMatrix& phi, const MinPlusVector& u) {
    return mp_matvec(phi, mp_project_weights(phi, u));
}

double best_approximation_error(const FeatureMatrix& phi, const MinPlusVector& u) {
    const MinPlusVector projected = mp_project(phi, u);
    return sup_distance(projected.values(), u.values()) / 2.0;
}

std::vector<std::size_t> IndependenceReport::flagged() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < unique_minimizer.size(); ++j)
        if (!unique_minimizer[j]) out.push_back(j);
    return out;
}

bool IndependenceReport::all_unique() const {
    return std::all_of(unique_minimizer.begin(), unique_minimizer.end(), [](bool b) { return b; });
}

IndependenceReport independence_diagnostic(const FeatureMatrix& phi) {
    IndependenceReport report;
    report.participates.assign(phi.cols(), false);
    report.unique_minimizer.assign(phi.cols(), false);
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        const auto row = phi.row(i);
        const double m = *std::min_element(row.begin(), row.end());
        if (m == kInfinity) continue;
        std::size_t count = 0;
        std::size_t which = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] == m) {
                report.participates[j] = true;
                if (count++ == 0) which = j;
            }
        }
        if (count == 1) report.unique_minimizer[which] = true;
    }
    return report;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
    detail::require_same_size(a.size(), b.size(), "sup_distance");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) d = std::max(d, std::abs(a[i] - b[i])); // equal infinities count as 0
    return d;
}

} // namespace mpadp
