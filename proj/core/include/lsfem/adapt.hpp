#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsfem/linalg.hpp"
#include "lsfem/mesh.hpp"
#include "lsfem/problem.hpp"

namespace lsfem {

/// Squared local estimator contributions.
struct IndicatorField {
    std::vector<double> fine_eta_sq;
    std::vector<double> coarse_eta_sq;
    double total = 0.0;
};

/// eta^2 = |grad p|^2 * area on every fine triangle (x-derivative only for
/// heat), summed into coarse triangles through `fine_to_coarse`. An empty
/// map means the fine mesh is the coarse mesh. `p` is a total-dof vector on
/// the fine mesh.
IndicatorField local_indicators(ProblemKind kind, const TriMesh& fine, const Vector& p,
                                std::span<const int> fine_to_coarse = {}, int num_coarse = -1);

/// Smallest set of ids whose values sum to at least theta times the total,
/// taken greedily from the largest value (ties: smaller id first). Returned
/// sorted ascending. Throws InputError for theta outside (0, 1] or negative
/// values.
std::vector<int> dorfler_mark(std::span<const double> eta_sq, double theta);

enum class RefineRatio { Half, Quarter };

struct AdaptiveConfig {
    double theta = 0.5;
    int max_levels = 10;
    /// No level beyond the first is solved once the coarse mesh has more
    /// vertices than this.
    long max_dofs = 200000;
    RefineRatio refine_ratio = RefineRatio::Half;
    double solver_tol = 1e-10;
    /// Precondition the Schur CG with the factored full-gradient stiffness
    /// of the trial space.
    bool precondition = true;
    bool compute_infsup = false;
    /// The inf-sup diagnostic is skipped above this many free trial dofs.
    int infsup_max_dofs = 2000;
    int quad_degree = 4;
};

struct RunRecord {
    int level = 0;
    long total_dofs_coarse = 0;
    long free_dofs_coarse = 0;
    long free_dofs_fine = 0;
    std::optional<double> error_l2;
    std::optional<double> error_energy;
    double estimator = 0.0;
    std::optional<double> infsup;
    int cg_iterations = 0;
};

struct StudyResult {
    std::vector<RunRecord> records;
    /// Set when a level failed; `records` holds the completed levels.
    std::optional<std::string> error;
};

/// Everything known about a level once it has been solved.
struct LevelView {
    const RunRecord& record;
    const TriMesh& coarse;
    const TriMesh& fine;
    const Vector& u_total;
    const IndicatorField& indicators;
};

using LevelObserver = std::function<void(const LevelView&)>;

/// Solve, estimate, mark, refine. The trial mesh of each level is refined
/// once (Half) or twice (Quarter) to give the test mesh. The adaptive loop
/// also stops when the marked set is empty. A failing level ends the study
/// with `error` set.

StudyResult adaptive_solve(const ProblemDef& problem, const TriMesh& initial, const AdaptiveConfig& config,
                           const LevelObserver& observer = {});
StudyResult uniform_solve(const ProblemDef& problem, const TriMesh& initial, const AdaptiveConfig& config,
                          const LevelObserver& observer = {});

} // namespace lsfem
