#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace lsfem {

/// Raised for malformed arguments: degenerate intervals, unknown boundary
/// tags, dimension mismatches, points outside the mesh.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix that must be symmetric positive definite is not.
class DefinitenessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iteration hits its cap. Carries the best iterate so a
/// caller can still inspect it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Eigen::VectorXd best, int iterations)
        : std::runtime_error(what), best_(std::move(best)), iterations_(iterations) {}

    const Eigen::VectorXd& best() const noexcept { return best_; }
    int iterations() const noexcept { return iterations_; }

private:
    Eigen::VectorXd best_;
    int iterations_;
};

} // namespace lsfem
