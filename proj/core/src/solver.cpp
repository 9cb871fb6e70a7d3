#include "lsfem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseCholesky>

#include "lsfem/errors.hpp"

namespace lsfem {

struct SpdFactor::Impl {
    Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
};

SpdFactor::SpdFactor(const SparseMatrix& A) : impl_(std::make_unique<Impl>()), n_(static_cast<int>(A.rows()))
{
    if (A.rows() != A.cols())
        throw DefinitenessError("factor_spd: matrix is not square");
    if (A.rows() == 0)
        return;
    const double scale = A.coeffs().cwiseAbs().maxCoeff();
    const SparseMatrix asym = A - SparseMatrix(A.transpose());
    if (asym.nonZeros() > 0 && asym.coeffs().cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DefinitenessError("factor_spd: matrix is not symmetric");
    impl_->llt.compute(A);
    if (impl_->llt.info() != Eigen::Success)
        throw DefinitenessError("factor_spd: matrix is not positive definite");
}

SpdFactor::~SpdFactor() = default;
SpdFactor::SpdFactor(SpdFactor&&) noexcept = default;
SpdFactor& SpdFactor::operator=(SpdFactor&&) noexcept = default;

Vector SpdFactor::solve(const Vector& b) const
{
    if (b.size() != n_)
        throw InputError("SpdFactor::solve: right-hand side has wrong size");
    if (n_ == 0)
        return Vector();
    return impl_->llt.solve(b);
}

SpdFactor factor_spd(const SparseMatrix& A) { return SpdFactor(A); }

namespace {

Vector apply_schur(const AssembledSystem& sys, const SpdFactor& factor, const Vector& x)
{
    return sys.B.transpose() * factor.solve(sys.B * x);
}

} // namespace

Vector schur_cg(const AssembledSystem& sys, const SpdFactor& factor, const Vector& b, double threshold, int max_iterations,
                const std::optional<Vector>& initial_guess, int* iterations,
                const std::function<void(int, const Vector&)>& on_iterate,
                const std::function<Vector(const Vector&)>& preconditioner)
{
    const auto n = sys.B.cols();
    if (b.size() != n)
        throw InputError("schur_cg: right-hand side has wrong size");
    Vector x = initial_guess ? *initial_guess : Vector::Zero(n);
    if (x.size() != n)
        throw InputError("schur_cg: initial guess has wrong size");

    auto precondition = [&](const Vector& v) { return preconditioner ? preconditioner(v) : v; };
    Vector r = b - apply_schur(sys, factor, x);
    int it = 0;
    if (iterations)
        *iterations = 0;
    if (r.norm() <= threshold)
        return x;

    Vector best = x;
    double best_res = r.norm();
    Vector z = precondition(r);
    double rz = r.dot(z);
    Vector d = z;
    while (true) {
        if (it >= max_iterations)
            throw ConvergenceError("schur_cg: no convergence after " + std::to_string(it) +
                                       " iterations (residual " + std::to_string(best_res) + ")",
                                   best, it);
        const Vector Sd = apply_schur(sys, factor, d);
        const double dSd = d.dot(Sd);
        if (!(dSd > 0.0))
            throw ConvergenceError("schur_cg: Schur complement is not positive definite", best, it);
        const double alpha = rz / dSd;
        x += alpha * d;
        r -= alpha * Sd;
        ++it;
        if (on_iterate)
            on_iterate(it, x);
        const double res = r.norm();
        if (res < best_res) {
            best_res = res;
            best = x;
        }
        if (res <= threshold)
            break;
        z = precondition(r);
        const double rz_new = r.dot(z);
        d = z + (rz_new / rz) * d;
        rz = rz_new;
    }
    if (iterations)
        *iterations = it;
    return x;
}

SaddleSolution solve_saddle(const AssembledSystem& sys, const SolveOptions& options)
{
    return solve_saddle(sys, factor_spd(sys.A), options);
}

SaddleSolution solve_saddle(const AssembledSystem& sys, const SpdFactor& factor, const SolveOptions& options)
{
    if (!(options.tol > 0.0 && options.tol <= 1e-6))
        throw InputError("solve_saddle: tol must lie in (0, 1e-6]");
    if (sys.B.rows() != sys.A.rows() || factor.size() != sys.A.rows())
        throw InputError("solve_saddle: block sizes do not match");

    const Vector rhs = sys.rhs();
    if (!rhs.allFinite())
        throw InputError("solve_saddle: right-hand side is not finite");
    const auto m = sys.B.cols();
    SaddleSolution sol;
    const Vector b = sys.B.transpose() * factor.solve(rhs);
    const double scale = std::min(b.norm(), rhs.norm());
    if (scale == 0.0) {
        sol.u = Vector::Zero(m);
    } else {
        const int cap = options.max_iterations > 0 ? options.max_iterations : static_cast<int>(10 * std::max<Eigen::Index>(m, 1));
        sol.u = schur_cg(sys, factor, b, options.tol * scale, cap, options.initial_guess, &sol.iterations,
                         options.on_iterate, options.preconditioner);
    }
    sol.p = factor.solve(rhs - sys.B * sol.u);
    sol.residual_p = (sys.A * sol.p + sys.B * sol.u - rhs).norm();
    sol.residual_u = (sys.B.transpose() * sol.p).norm();
    return sol;
}

double y_norm(const SparseMatrix& A, const Vector& q)
{
    if (A.rows() != q.size() || A.cols() != q.size())
        throw InputError("y_norm: dimension mismatch");
    if (q.size() == 0)
        return 0.0;
    const double value = q.dot(A * q);
    if (value >= 0.0)
        return std::sqrt(value);
    const double amax = A.nonZeros() ? A.coeffs().cwiseAbs().maxCoeff() : 0.0;
    if (value >= -1e-14 * q.squaredNorm() * amax)
        return 0.0;
    throw DefinitenessError("y_norm: negative quadratic form");
}

double discrete_x_norm(const AssembledSystem& sys, const SpdFactor& factor, const Vector& u)
{
    if (sys.convection.size() == 0)
        throw InputError("discrete_x_norm: system has no time-derivative block (heat only)");
    if (u.size() != sys.embed.cols())
        throw InputError("discrete_x_norm: dimension mismatch");
    const Vector eu = sys.embed * u;
    const Vector w = factor.solve(sys.convection * eu);
    const double a = std::max(0.0, eu.dot(sys.A * eu));
    const double b = std::max(0.0, w.dot(sys.A * w));
    return std::sqrt(a + b);
}

double discrete_x_norm(const AssembledSystem& sys, const Vector& u)
{
    return discrete_x_norm(sys, factor_spd(sys.A), u);
}

NormOperator heat_x_norm_operator(const AssembledSystem& sys, const SpdFactor& factor)
{
    if (sys.convection.size() == 0)
        throw InputError("heat_x_norm_operator: system has no time-derivative block");
    return [&sys, &factor](const Vector& v) -> Vector {
        const Vector ev = sys.embed * v;
        const Vector w = factor.solve(sys.convection * ev);
        return sys.embed.transpose() * (sys.A * ev + sys.convection.transpose() * w);
    };
}

double infsup_constant(const AssembledSystem& sys, const SpdFactor& factor, const NormOperator& norm,
                       const InfSupOptions& options)
{
    const auto m = sys.B.cols();
    if (m == 0)
        throw InputError("infsup_constant: no trial dofs");

    // Deterministic start with components along many eigenvectors.
    Vector v(m);
    for (Eigen::Index i = 0; i < m; ++i)
        v[i] = 1.0 + 0.5 * std::sin(1.0 + 7.0 * static_cast<double>(i));
    v /= std::sqrt(v.dot(norm(v)));

    double lambda = std::numeric_limits<double>::infinity();
    const int inner_cap = static_cast<int>(std::max<Eigen::Index>(50 * m, 1000));
    for (int it = 1; it <= options.max_iterations; ++it) {
        const Vector Nv = norm(v);
        const Vector w = schur_cg(sys, factor, Nv, options.inner_tol * Nv.norm(), inner_cap, v);
        const Vector Nw = norm(w);
        const double wNw = w.dot(Nw);
        const double next = w.dot(Nv) / wNw;
        v = w / std::sqrt(wNw);
        if (std::abs(next - lambda) <= options.tol * std::abs(next))
            return std::sqrt(next);
        lambda = next;
    }
    throw ConvergenceError("infsup_constant: inverse iteration did not converge", v, options.max_iterations);
}

double infsup_constant(const AssembledSystem& sys, const SparseMatrix& norm_matrix, const InfSupOptions& options)
{
    if (norm_matrix.rows() != sys.B.cols() || norm_matrix.cols() != sys.B.cols())
        throw InputError("infsup_constant: norm matrix must be square over the trial dofs");
    const SpdFactor factor = factor_spd(sys.A);
    return infsup_constant(
        sys, factor, [&norm_matrix](const Vector& v) -> Vector { return norm_matrix * v; }, options);
}

} // namespace lsfem
