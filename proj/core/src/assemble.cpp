#include "lsfem/assemble.hpp"

#include <string>

#include "lsfem/errors.hpp"

namespace lsfem {
namespace {

struct Gradients {
    double area;
    std::array<Point, 3> grad; // gradients of the barycentric coordinates
};

Gradients gradients(const TriangleGeometry& p)
{
    const double a = signed_area(p[0], p[1], p[2]);
    if (!(std::abs(a) > 0.0))
        throw InputError("element matrix requested for a zero-area triangle");
    Gradients g{std::abs(a), {}};
    for (int i = 0; i < 3; ++i) {
        const Point& q1 = p[(i + 1) % 3];
        const Point& q2 = p[(i + 2) % 3];
        g.grad[i] = {(q1.y - q2.y) / (2.0 * a), (q2.x - q1.x) / (2.0 * a)};
    }
    return g;
}

LocalMatrix dx_stiffness(const Gradients& g)
{
    LocalMatrix m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = g.area * g.grad[i].x * g.grad[j].x;
    return m;
}

LocalMatrix dy_stiffness(const Gradients& g)
{
    LocalMatrix m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = g.area * g.grad[i].y * g.grad[j].y;
    return m;
}

LocalMatrix convection(const Gradients& g)
{
    LocalMatrix m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = g.grad[j].y * g.area / 3.0;
    return m;
}

template <typename LocalFn>
SparseMatrix assemble_full(const TriMesh& mesh, LocalFn&& local)
{
    const auto n = static_cast<Eigen::Index>(mesh.num_vertices());
    std::vector<Triplet> entries;
    entries.reserve(mesh.num_triangles() * 9);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& v = mesh.triangles()[t].v;
        const LocalMatrix m = local(mesh.corners(static_cast<int>(t)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                entries.emplace_back(v[i], v[j], m(i, j));
    }
    SparseMatrix M(n, n);
    M.setFromTriplets(entries.begin(), entries.end());
    return M;
}

} // namespace

LocalMatrix local_A(ProblemKind kind, const TriangleGeometry& tri)
{
    const Gradients g = gradients(tri);
    switch (kind) {
    case ProblemKind::Heat:
        return dx_stiffness(g);
    case ProblemKind::Poisson:
    case ProblemKind::Wave:
        break;
    }
    return dx_stiffness(g) + dy_stiffness(g);
}

LocalMatrix local_B(ProblemKind kind, const TriangleGeometry& tri)
{
    const Gradients g = gradients(tri);
    switch (kind) {
    case ProblemKind::Heat:
        return dx_stiffness(g) + convection(g);
    case ProblemKind::Wave:
        return dx_stiffness(g) - dy_stiffness(g);
    case ProblemKind::Poisson:
        break;
    }
    return dx_stiffness(g) + dy_stiffness(g);
}

LocalMatrix local_convection(const TriangleGeometry& tri) { return convection(gradients(tri)); }

SparseMatrix assemble_A_full(ProblemKind kind, const TriMesh& mesh)
{
    return assemble_full(mesh, [kind](const TriangleGeometry& p) { return local_A(kind, p); });
}

SparseMatrix assemble_B_full(ProblemKind kind, const TriMesh& mesh)
{
    return assemble_full(mesh, [kind](const TriangleGeometry& p) { return local_B(kind, p); });
}

Vector assemble_load_full(const TriMesh& mesh, const ScalarField& f, const QuadRule& quad)
{
    Vector load = Vector::Zero(static_cast<Eigen::Index>(mesh.num_vertices()));
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto c = mesh.corners(static_cast<int>(t));
        const auto& v = mesh.triangles()[t].v;
        const double a = std::abs(signed_area(c[0], c[1], c[2]));
        for (std::size_t q = 0; q < quad.points.size(); ++q) {
            const auto& l = quad.points[q];
            const Point x = l[0] * c[0] + l[1] * c[1] + l[2] * c[2];
            const double fw = quad.weights[q] * a * f(x);
            for (int i = 0; i < 3; ++i)
                load[v[i]] += fw * l[i];
        }
    }
    return load;
}

AssembledSystem assemble_system(const ProblemDef& problem, const FeSpace& trial, const FeSpace& test,
                                const Prolongation& prolongation, const QuadRule& quad)
{
    const SparseMatrix& P = prolongation.matrix;
    if (P.rows() != test.total_dofs() || P.cols() != trial.total_dofs())
        throw InputError("assemble_system: prolongation is " + std::to_string(P.rows()) + "x" +
                         std::to_string(P.cols()) + ", expected " + std::to_string(test.total_dofs()) + "x" +
                         std::to_string(trial.total_dofs()));
    if (!problem.source)
        throw InputError("assemble_system: problem has no source term");

    const TriMesh& fine = test.mesh();
    const SparseMatrix A_full = assemble_A_full(problem.kind, fine);
    const SparseMatrix B_full = assemble_B_full(problem.kind, fine);
    const Vector load = assemble_load_full(fine, problem.source, quad);

    const SparseMatrix Ry = test.restriction();
    const SparseMatrix RxT = SparseMatrix(trial.restriction().transpose());

    AssembledSystem sys;
    sys.kind = problem.kind;
    sys.A = Ry * A_full * SparseMatrix(Ry.transpose());
    const SparseMatrix BP = B_full * P;
    sys.B = Ry * BP * RxT;
    sys.f = Ry * load;

    const Vector trial_lift = Eigen::Map<const Vector>(trial.dirichlet_values().data(), trial.total_dofs());
    const Vector test_lift = Eigen::Map<const Vector>(test.dirichlet_values().data(), test.total_dofs());
    sys.g = -(Ry * (BP * trial_lift)) - Ry * (A_full * test_lift);

    sys.embed = Ry * P * RxT;
    if (problem.kind == ProblemKind::Heat) {
        const SparseMatrix C_full =
            assemble_full(fine, [](const TriangleGeometry& p) { return local_convection(p); });
        sys.convection = Ry * C_full * SparseMatrix(Ry.transpose());
    }
    return sys;
}

} // namespace lsfem
