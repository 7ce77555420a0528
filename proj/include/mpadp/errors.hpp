#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mpadp {

/// Invalid input: out-of-range parameters, malformed files, bad configs.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vector/matrix lengths that do not agree.
class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A feature column has no finite entry where the projected vector is finite.
class DegenerateBasisError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The solver requires every feature entry to be finite.
class FiniteFeaturesRequired : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// No feasible point on the brute-force search grid.
class GridTooCoarseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method hit its iteration cap. Carries the last residual and
/// the residual history so callers can report how far it got.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double last_residual,
                        std::vector<double> trace = {})
        : std::runtime_error(what), last_residual_(last_residual), trace_(std::move(trace)) {}

    double last_residual() const noexcept { return last_residual_; }
    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    double last_residual_;
    std::vector<double> trace_;
};

namespace detail {
inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
}
} // namespace detail

} // namespace mpadp
