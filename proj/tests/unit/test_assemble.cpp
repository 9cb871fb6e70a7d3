#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include <lsfem/assemble.hpp>
#include <lsfem/errors.hpp>
#include <lsfem/problems.hpp>
#include <lsfem/quadrature.hpp>

#include "dense.hpp"

using namespace lsfem;

namespace {

const TriangleGeometry reference{Point{0, 0}, Point{1, 0}, Point{0, 1}};

double integrate_reference(const QuadRule& q, double (*f)(double, double))
{
    double s = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i)
        s += 0.5 * q.weights[i] * f(q.points[i][1], q.points[i][2]);
    return s;
}

void expect_matrix(const LocalMatrix& m, const LocalMatrix& expect)
{
    EXPECT_LT((m - expect).cwiseAbs().maxCoeff(), 1e-15) << m << "\nexpected\n" << expect;
}

} // namespace

TEST(Quadrature, CentroidIntegratesOne)
{
    EXPECT_NEAR(integrate_reference(quad_rule(1), [](double, double) { return 1.0; }), 0.5, 1e-16);
}

TEST(Quadrature, DegreeTwoIntegratesXY)
{
    EXPECT_NEAR(integrate_reference(quad_rule(2), [](double x, double y) { return x * y; }), 1.0 / 24.0, 1e-16);
}

TEST(Quadrature, DegreeFourIntegratesXToTheFourth)
{
    EXPECT_NEAR(integrate_reference(quad_rule(4), [](double x, double) { return x * x * x * x; }), 1.0 / 30.0, 1e-15);
}

TEST(Quadrature, WeightsArePositiveAndSumToOne)
{
    for (int d : {1, 2, 4}) {
        const QuadRule q = quad_rule(d);
        double s = 0.0;
        for (double w : q.weights) {
            EXPECT_GT(w, 0.0);
            s += w;
        }
        EXPECT_NEAR(s, 1.0, 1e-15);
        for (const auto& p : q.points)
            EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-15);
    }
}

TEST(Quadrature, UnsupportedDegree)
{
    EXPECT_THROW(quad_rule(0), InputError);
    EXPECT_THROW(quad_rule(3), InputError);
    EXPECT_THROW(quad_rule(5), InputError);
}

TEST(LocalA, PoissonReference)
{
    LocalMatrix e;
    e << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
    expect_matrix(local_A(ProblemKind::Poisson, reference), e);
    expect_matrix(local_A(ProblemKind::Wave, reference), e);
}

TEST(LocalA, HeatReference)
{
    LocalMatrix e;
    e << 0.5, -0.5, 0, -0.5, 0.5, 0, 0, 0, 0;
    expect_matrix(local_A(ProblemKind::Heat, reference), e);
}

TEST(LocalA, ZeroAreaIsRejected)
{
    const TriangleGeometry flat{Point{0, 0}, Point{1, 1}, Point{2, 2}};
    EXPECT_THROW(local_A(ProblemKind::Poisson, flat), InputError);
    EXPECT_THROW(local_B(ProblemKind::Heat, flat), InputError);
}

TEST(LocalB, ConvectionColumns)
{
    // d_t phi = (-1, 0, 1) on the reference triangle, int phi_i = 1/6
    LocalMatrix e;
    e << -1.0 / 6, 0, 1.0 / 6, -1.0 / 6, 0, 1.0 / 6, -1.0 / 6, 0, 1.0 / 6;
    expect_matrix(local_convection(reference), e);
    expect_matrix(local_B(ProblemKind::Heat, reference) - local_A(ProblemKind::Heat, reference), e);
}

TEST(LocalB, PoissonEqualsA)
{
    const TriangleGeometry t{Point{0.1, 0.2}, Point{1.3, -0.4}, Point{0.7, 0.9}};
    EXPECT_EQ(local_B(ProblemKind::Poisson, t), local_A(ProblemKind::Poisson, t));
}

TEST(LocalB, WaveIsXMinusTStiffness)
{
    LocalMatrix e;
    // x-stiffness minus t-stiffness on the reference triangle
    e << 0.5 - 0.5, -0.5, 0.5, -0.5, 0.5, 0, 0.5, 0, -0.5;
    const LocalMatrix b = local_B(ProblemKind::Wave, reference);
    expect_matrix(b, e);
    EXPECT_EQ(b, b.transpose());
}

TEST(AssembleFull, StiffnessOfCentreHat)
{
    const TriMesh m = make_rect_mesh({0, 1}, {0, 1}, 2, 2);
    const SparseMatrix A = assemble_A_full(ProblemKind::Poisson, m);
    EXPECT_NEAR(A.coeff(4, 4), 4.0, 1e-14);
    EXPECT_NEAR(Vector(A * Vector::Ones(9)).norm(), 0.0, 1e-14);
}

TEST(AssembleFull, LoadOfConstantIsHatIntegral)
{
    const TriMesh m = make_rect_mesh({0, 1}, {0, 1}, 2, 2);
    const Vector f = assemble_load_full(m, [](const Point&) { return 3.0; }, quad_rule(1));
    EXPECT_NEAR(f.sum(), 3.0, 1e-14);
    // the centre hat has support area 6 * 1/8 and integral area/3
    EXPECT_NEAR(f[4], 3.0 * 0.75 / 3.0, 1e-15);
}

TEST(AssembleSystem, PoissonSquareBlocks)
{
    const auto m = std::make_shared<const TriMesh>(make_lshape_mesh(2));
    const ProblemDef p = poisson_lshape();
    const FeSpace s = build_space(m, p.x_bc, p.dirichlet);
    const FeSpace t = build_space(m, p.y_bc);
    const AssembledSystem sys = assemble_system(p, s, t, build_prolongation(s, t, std::span<const ParentMap>{}),
                                                quad_rule(4));
    EXPECT_EQ(sys.num_test(), sys.num_trial());
    EXPECT_EQ(Eigen::MatrixXd(sys.A), Eigen::MatrixXd(sys.B));
    EXPECT_EQ(sys.convection.nonZeros(), 0);
}

TEST(AssembleSystem, LiftMatchesDenseComputation)
{
    // g = -(B_full u_D) restricted to free test rows, checked densely
    const auto coarse = std::make_shared<const TriMesh>(make_rect_mesh({0, 1}, {0, 1}, 2, 2));
    const Refined r = uniform_refine(*coarse);
    const auto fine = std::make_shared<const TriMesh>(r.mesh);
    const ProblemDef p = heat_incompatible();
    const FeSpace x = build_space(coarse, p.x_bc, p.dirichlet);
    const FeSpace y = build_space(fine, p.y_bc);
    const Prolongation P = build_prolongation(x, y, r.parents);
    const AssembledSystem sys = assemble_system(p, x, y, P, quad_rule(4));

    const oracle::Dense Bf = oracle::to_dense(assemble_B_full(ProblemKind::Heat, *fine));
    const Vector lift = P.matrix * Eigen::Map<const Vector>(x.dirichlet_values().data(), x.total_dofs());
    const std::vector<double> bl = oracle::matvec(Bf, oracle::to_std(lift));
    for (int i = 0; i < y.num_free(); ++i)
        EXPECT_NEAR(sys.g[i], -bl[static_cast<std::size_t>(y.free_dofs()[static_cast<std::size_t>(i)])], 1e-14);
    // f = 2 everywhere: the load is 2 * int phi_i
    const Vector load = assemble_load_full(*fine, [](const Point&) { return 2.0; }, quad_rule(1));
    for (int i = 0; i < y.num_free(); ++i)
        EXPECT_NEAR(sys.f[i], load[y.free_dofs()[static_cast<std::size_t>(i)]], 1e-14);
}

TEST(AssembleSystem, SizeMismatchIsRejected)
{
    const auto a = std::make_shared<const TriMesh>(make_rect_mesh({0, 1}, {0, 1}, 2, 2));
    const auto b = std::make_shared<const TriMesh>(make_rect_mesh({0, 1}, {0, 1}, 3, 3));
    const ProblemDef p = heat_smooth();
    const FeSpace x = build_space(a, {});
    const FeSpace y = build_space(b, {});
    Prolongation bogus{SparseMatrix(9, 9)};
    EXPECT_THROW(assemble_system(p, x, y, bogus, quad_rule(4)), InputError);
}

TEST(AssembleSystem, Deterministic)
{
    const ProblemDef p = wave_smooth();
    const auto c = std::make_shared<const TriMesh>(make_initial_mesh(p, 2, 4));
    const Refined r = uniform_refine(*c);
    const auto f = std::make_shared<const TriMesh>(r.mesh);
    const FeSpace x = build_space(c, p.x_bc, p.dirichlet);
    const FeSpace y = build_space(f, p.y_bc);
    const Prolongation P = build_prolongation(x, y, r.parents);
    const AssembledSystem s1 = assemble_system(p, x, y, P, quad_rule(4));
    const AssembledSystem s2 = assemble_system(p, x, y, P, quad_rule(4));
    EXPECT_EQ(Eigen::MatrixXd(s1.A), Eigen::MatrixXd(s2.A));
    EXPECT_EQ(Eigen::MatrixXd(s1.B), Eigen::MatrixXd(s2.B));
    EXPECT_EQ(s1.f, s2.f);
}
