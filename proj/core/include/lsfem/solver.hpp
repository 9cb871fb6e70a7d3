#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "lsfem/assemble.hpp"
#include "lsfem/linalg.hpp"

namespace lsfem {

/// Sparse Cholesky factor of a symmetric positive definite matrix.
class SpdFactor {
public:
    /// Throws DefinitenessError if `A` is not symmetric or the factorization
    /// meets a non-positive pivot.
    explicit SpdFactor(const SparseMatrix& A);
    ~SpdFactor();
    SpdFactor(SpdFactor&&) noexcept;
    SpdFactor& operator=(SpdFactor&&) noexcept;

    Vector solve(const Vector& b) const;
    int size() const { return n_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int n_ = 0;
};

SpdFactor factor_spd(const SparseMatrix& A);

struct SolveOptions {
    double tol = 1e-10;
    /// 0 selects 10 * (number of trial dofs).
    int max_iterations = 0;
    std::optional<Vector> initial_guess;
    /// Called with (iteration, current iterate) after every CG step.
    std::function<void(int, const Vector&)> on_iterate;
    /// Approximate inverse of the Schur complement (symmetric positive
    /// definite). Empty runs plain CG. The stopping test always uses the
    /// unpreconditioned residual.
    std::function<Vector(const Vector&)> preconditioner;
};

struct SaddleSolution {
    Vector p;
    Vector u;
    double residual_p = 0.0; ///< |A p + B u - rhs|
    double residual_u = 0.0; ///< |B^T p|
    int iterations = 0;
};

/// Conjugate gradients on the Schur complement B^T A^{-1} B, then
/// p = A^{-1}(rhs - B u). Stops once the Schur residual drops below
/// tol * min(|B^T A^{-1} rhs|, |rhs|). Throws ConvergenceError (carrying the
/// best iterate) at the iteration cap and InputError for tol outside (0, 1e-6].
SaddleSolution solve_saddle(const AssembledSystem& sys, const SolveOptions& options = {});
SaddleSolution solve_saddle(const AssembledSystem& sys, const SpdFactor& factor, const SolveOptions& options = {});

/// Solves (B^T A^{-1} B) x = b by (preconditioned) CG until the residual
/// norm is at most `threshold` (absolute).
Vector schur_cg(const AssembledSystem& sys, const SpdFactor& factor, const Vector& b, double threshold, int max_iterations,
                const std::optional<Vector>& initial_guess = std::nullopt, int* iterations = nullptr,
                const std::function<void(int, const Vector&)>& on_iterate = {},
                const std::function<Vector(const Vector&)>& preconditioner = {});

/// sqrt(q^T A q); tiny negative round-off is reported as 0.
double y_norm(const SparseMatrix& A, const Vector& q);

/// Discrete ansatz norm for the heat equation:
/// sqrt(|u|_Y^2 + |w|_Y^2) with A w = (time-derivative block) u.
double discrete_x_norm(const AssembledSystem& sys, const SpdFactor& factor, const Vector& u);
double discrete_x_norm(const AssembledSystem& sys, const Vector& u);

/// Symmetric positive definite operator on trial vectors.
using NormOperator = std::function<Vector(const Vector&)>;

/// Matrix of the discrete heat ansatz norm, applied matrix-free.
NormOperator heat_x_norm_operator(const AssembledSystem& sys, const SpdFactor& factor);

struct InfSupOptions {
    double tol = 1e-8;
    int max_iterations = 2000;
    double inner_tol = 1e-12;
};

/// sqrt of the smallest eigenvalue of (B^T A^{-1} B) v = lambda N v, by
/// inverse iteration until the relative eigenvalue change is below `tol`.
/// Throws ConvergenceError at the cap.
double infsup_constant(const AssembledSystem& sys, const SparseMatrix& norm_matrix, const InfSupOptions& options = {});
double infsup_constant(const AssembledSystem& sys, const SpdFactor& factor, const NormOperator& norm,
                       const InfSupOptions& options = {});

} // namespace lsfem
