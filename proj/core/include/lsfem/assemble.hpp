#pragma once

#include <array>

#include <Eigen/Core>

#include "lsfem/linalg.hpp"
#include "lsfem/problem.hpp"
#include "lsfem/quadrature.hpp"
#include "lsfem/space.hpp"

namespace lsfem {

using LocalMatrix = Eigen::Matrix3d;
using TriangleGeometry = std::array<Point, 3>;

/// A-form on one triangle: full-gradient stiffness for Poisson and wave,
/// x-derivative stiffness for heat. Entry (i, j) pairs test function i with
/// trial function j.
LocalMatrix local_A(ProblemKind kind, const TriangleGeometry& tri);

/// B-form on one triangle. Poisson: same as local_A. Heat: x-stiffness plus
/// the time-derivative term int (d_t phi_j) phi_i. Wave: x-stiffness minus
/// t-stiffness.
LocalMatrix local_B(ProblemKind kind, const TriangleGeometry& tri);

/// int (d_t phi_j) phi_i, the second coordinate playing the role of time.
LocalMatrix local_convection(const TriangleGeometry& tri);

/// Saddle-point blocks over the free dofs:
///   A p + B u = f + g,   B^T p = 0.
struct AssembledSystem {
    ProblemKind kind = ProblemKind::Poisson;
    SparseMatrix A;       ///< test x test
    SparseMatrix B;       ///< test x trial
    Vector f;             ///< load
    Vector g;             ///< Dirichlet lift moved to the right-hand side
    /// Trial functions written in the test basis (free rows only). Exact
    /// representation when every constrained test vertex is also a
    /// constrained trial vertex with zero data (Poisson, heat).
    SparseMatrix embed;
    /// Time-derivative block on the test space, heat only (else empty).
    SparseMatrix convection;

    Vector rhs() const { return f + g; }
    int num_test() const { return static_cast<int>(A.rows()); }
    int num_trial() const { return static_cast<int>(B.cols()); }
};

/// All forms are integrated on the test (fine) mesh; the trial space enters
/// through `prolongation`. Throws InputError on size mismatches.
AssembledSystem assemble_system(const ProblemDef& problem, const FeSpace& trial, const FeSpace& test,
                                const Prolongation& prolongation, const QuadRule& quad);

/// Global A-form over all vertices of a mesh (no boundary elimination).
SparseMatrix assemble_A_full(ProblemKind kind, const TriMesh& mesh);
/// Global B-form over all vertices of a mesh.
SparseMatrix assemble_B_full(ProblemKind kind, const TriMesh& mesh);
/// Load vector int f phi_i over all vertices.
Vector assemble_load_full(const TriMesh& mesh, const ScalarField& f, const QuadRule& quad);

} // namespace lsfem
