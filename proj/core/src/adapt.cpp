#include "lsfem/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "lsfem/assemble.hpp"
#include "lsfem/errors.hpp"
#include "lsfem/problems.hpp"
#include "lsfem/quadrature.hpp"
#include "lsfem/solver.hpp"
#include "lsfem/space.hpp"

namespace lsfem {

IndicatorField local_indicators(ProblemKind kind, const TriMesh& fine, const Vector& p,
                                std::span<const int> fine_to_coarse, int num_coarse)
{
    const auto nt = static_cast<int>(fine.num_triangles());
    if (p.size() != static_cast<Eigen::Index>(fine.num_vertices()))
        throw InputError("local_indicators: p must have one entry per fine vertex");
    if (!fine_to_coarse.empty() && static_cast<int>(fine_to_coarse.size()) != nt)
        throw InputError("local_indicators: parent map does not match the fine mesh");
    if (num_coarse < 0)
        num_coarse = fine_to_coarse.empty() ? nt : 0;
    if (num_coarse == 0 && !fine_to_coarse.empty())
        num_coarse = *std::max_element(fine_to_coarse.begin(), fine_to_coarse.end()) + 1;

    IndicatorField out;
    out.fine_eta_sq.resize(static_cast<std::size_t>(nt));
    out.coarse_eta_sq.assign(static_cast<std::size_t>(num_coarse), 0.0);
    for (int t = 0; t < nt; ++t) {
        const auto c = fine.corners(t);
        const auto& v = fine.triangle(t).v;
        const double a2 = signed_area(c[0], c[1], c[2]) * 2.0;
        double gx = 0.0;
        double gy = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Point& q1 = c[(i + 1) % 3];
            const Point& q2 = c[(i + 2) % 3];
            gx += p[v[i]] * (q1.y - q2.y) / a2;
            gy += p[v[i]] * (q2.x - q1.x) / a2;
        }
        const double g2 = kind == ProblemKind::Heat ? gx * gx : gx * gx + gy * gy;
        const double eta = g2 * 0.5 * std::abs(a2);
        out.fine_eta_sq[static_cast<std::size_t>(t)] = eta;
        const int parent = fine_to_coarse.empty() ? t : fine_to_coarse[static_cast<std::size_t>(t)];
        if (parent < 0 || parent >= num_coarse)
            throw InputError("local_indicators: parent id out of range");
        out.coarse_eta_sq[static_cast<std::size_t>(parent)] += eta;
    }
    out.total = std::accumulate(out.fine_eta_sq.begin(), out.fine_eta_sq.end(), 0.0);
    return out;
}

std::vector<int> dorfler_mark(std::span<const double> eta_sq, double theta)
{
    if (!(theta > 0.0 && theta <= 1.0))
        throw InputError("dorfler_mark: theta must lie in (0, 1]");
    std::vector<int> order(eta_sq.size());
    std::iota(order.begin(), order.end(), 0);
    for (double e : eta_sq)
        if (!(e >= 0.0))
            throw InputError("dorfler_mark: indicators must be nonnegative");
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eta_sq[a] > eta_sq[b]; });

    // summing in the same order as the greedy loop makes theta = 1 exact
    double total = 0.0;
    for (int i : order)
        total += eta_sq[i];
    std::vector<int> marked;
    if (total == 0.0)
        return marked;
    const double goal = theta * total;
    double sum = 0.0;
    for (int i : order) {
        if (sum >= goal || eta_sq[i] == 0.0)
            break;
        marked.push_back(i);
        sum += eta_sq[i];
    }
    std::sort(marked.begin(), marked.end());
    return marked;
}

namespace {

SparseMatrix trial_norm_matrix(ProblemKind kind, const FeSpace& trial)
{
    const SparseMatrix R = trial.restriction();
    const SparseMatrix K = assemble_A_full(kind == ProblemKind::Heat ? ProblemKind::Poisson : kind, trial.mesh());
    return R * K * SparseMatrix(R.transpose());
}

struct Level {
    std::shared_ptr<const TriMesh> coarse;
    std::shared_ptr<const TriMesh> fine;
    std::vector<ParentMap> chain;
};

Level make_level(const TriMesh& coarse, RefineRatio ratio)
{
    Level lv;
    lv.coarse = std::make_shared<const TriMesh>(coarse);
    Refined r = uniform_refine(coarse);
    lv.chain.push_back(std::move(r.parents));
    if (ratio == RefineRatio::Quarter) {
        Refined r2 = uniform_refine(r.mesh);
        lv.chain.push_back(std::move(r2.parents));
        r.mesh = std::move(r2.mesh);
    }
    lv.fine = std::make_shared<const TriMesh>(std::move(r.mesh));
    return lv;
}

StudyResult run_study(const ProblemDef& problem, const TriMesh& initial, const AdaptiveConfig& config,
                      const LevelObserver& observer, bool adaptive)
{
    if (!(config.theta > 0.0 && config.theta <= 1.0))
        throw InputError("theta must lie in (0, 1]");
    if (config.max_levels < 1)
        throw InputError("max_levels must be at least 1");
    if (config.max_dofs < 1)
        throw InputError("max_dofs must be at least 1");
    if (!(config.solver_tol > 0.0 && config.solver_tol <= 1e-6))
        throw InputError("solver_tol must lie in (0, 1e-6]");

    const QuadRule quad = quad_rule(config.quad_degree);
    StudyResult result;
    TriMesh coarse = initial;
    std::optional<Vector> guess;

    for (int level = 0; level < config.max_levels; ++level) {
        if (level > 0 && static_cast<long>(coarse.num_vertices()) > config.max_dofs)
            break;
        try {
            const Level lv = make_level(coarse, config.refine_ratio);
            const FeSpace trial = build_space(lv.coarse, problem.x_bc, problem.dirichlet);
            const FeSpace test = build_space(lv.fine, problem.y_bc);
            const Prolongation P = build_prolongation(trial, test, lv.chain);
            const AssembledSystem sys = assemble_system(problem, trial, test, P, quad);
            const SpdFactor factor = factor_spd(sys.A);

            SolveOptions opts;
            opts.tol = config.solver_tol;
            opts.initial_guess = guess;
            std::optional<SpdFactor> stiffness;
            if (config.precondition && trial.num_free() > 0) {
                stiffness.emplace(trial_norm_matrix(problem.kind, trial));
                opts.preconditioner = [&stiffness](const Vector& r) { return stiffness->solve(r); };
            }
            const SaddleSolution sol = solve_saddle(sys, factor, opts);

            const Vector u_total = trial.expand(sol.u);
            const Vector p_total = test.expand_homogeneous(sol.p);
            const std::vector<int> to_coarse = compose_parents(lv.chain);
            const IndicatorField ind = local_indicators(problem.kind, *lv.fine, p_total, to_coarse,
                                                        static_cast<int>(coarse.num_triangles()));

            RunRecord rec;
            rec.level = level;
            rec.total_dofs_coarse = static_cast<long>(coarse.num_vertices());
            rec.free_dofs_coarse = trial.num_free();
            rec.free_dofs_fine = test.num_free();
            rec.estimator = y_norm(sys.A, sol.p);
            rec.cg_iterations = sol.iterations;
            if (problem.exact) {
                const ErrorNorms e = compute_errors(trial, u_total, *problem.exact, problem.kind);
                rec.error_l2 = e.l2;
                rec.error_energy = e.energy;
            }
            if (config.compute_infsup && trial.num_free() > 0 && trial.num_free() <= config.infsup_max_dofs) {
                if (problem.kind == ProblemKind::Heat)
                    rec.infsup = infsup_constant(sys, factor, heat_x_norm_operator(sys, factor));
                else
                    rec.infsup = infsup_constant(sys, trial_norm_matrix(problem.kind, trial));
            }
            result.records.push_back(rec);
            if (observer)
                observer({result.records.back(), coarse, *lv.fine, u_total, ind});

            if (level + 1 == config.max_levels)
                break;
            Refined next;
            if (adaptive) {
                const std::vector<int> marked = dorfler_mark(ind.coarse_eta_sq, config.theta);
                // a zero estimator marks nothing, and the next level would repeat this one
                if (marked.empty())
                    break;
                next = bisect(coarse, marked);
            } else {
                next = uniform_refine(coarse);
            }
            const FeSpace next_trial =
                build_space(std::make_shared<const TriMesh>(next.mesh), problem.x_bc, problem.dirichlet);
            const Prolongation Pn = build_prolongation(trial, next_trial, next.parents);
            guess = next_trial.restrict_to_free(Pn.matrix * u_total);
            coarse = std::move(next.mesh);
        } catch (const std::exception& ex) {
            result.error = "level " + std::to_string(level) + ": " + ex.what();
            break;
        }
    }
    return result;
}

} // namespace

StudyResult adaptive_solve(const ProblemDef& problem, const TriMesh& initial, const AdaptiveConfig& config,
                           const LevelObserver& observer)
{
    return run_study(problem, initial, config, observer, true);
}

StudyResult uniform_solve(const ProblemDef& problem, const TriMesh& initial, const AdaptiveConfig& config,
                          const LevelObserver& observer)
{
    return run_study(problem, initial, config, observer, false);
}

} // namespace lsfem
