#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <lsfem/errors.hpp>
#include <lsfem/mesh.hpp>
#include <lsfem/space.hpp>

using namespace lsfem;

namespace {

TriMesh unit_square() { return make_rect_mesh({0, 1}, {0, 1}, 1, 1); }

} // namespace

TEST(RectMesh, MinimalSplit)
{
    const TriMesh m = unit_square();
    EXPECT_EQ(m.num_vertices(), 4u);
    EXPECT_EQ(m.num_triangles(), 2u);
    EXPECT_EQ(m.boundary().size(), 4u);
    EXPECT_TRUE(is_conforming(m));
}

TEST(RectMesh, CountsFollowGridFormulas)
{
    const TriMesh m = make_rect_mesh({0, 3}, {0, 6}, 2, 4);
    EXPECT_EQ(m.num_vertices(), 3u * 5u);
    EXPECT_EQ(m.num_triangles(), 2u * 2u * 4u);
}

TEST(RectMesh, AreasSumToDomain)
{
    const TriMesh m = make_rect_mesh({0, 1}, {0, 1}, 2, 2);
    EXPECT_EQ(m.num_vertices(), 9u);
    EXPECT_EQ(m.num_triangles(), 8u);
    EXPECT_NEAR(total_area(m), 1.0, 1e-15);
}

TEST(RectMesh, SidesAreTagged)
{
    const TriMesh m = make_rect_mesh({0, 2}, {0, 1}, 2, 3);
    int counts[5] = {};
    for (const auto& e : m.boundary()) {
        ASSERT_GE(e.tag, tags::left);
        ASSERT_LE(e.tag, tags::top);
        ++counts[e.tag];
        const Point a = m.vertex(e.a), b = m.vertex(e.b);
        if (e.tag == tags::left)
            EXPECT_TRUE(a.x == 0 && b.x == 0);
        if (e.tag == tags::right)
            EXPECT_TRUE(a.x == 2 && b.x == 2);
        if (e.tag == tags::bottom)
            EXPECT_TRUE(a.y == 0 && b.y == 0);
        if (e.tag == tags::top)
            EXPECT_TRUE(a.y == 1 && b.y == 1);
    }
    EXPECT_EQ(counts[tags::left], 3);
    EXPECT_EQ(counts[tags::right], 3);
    EXPECT_EQ(counts[tags::bottom], 2);
    EXPECT_EQ(counts[tags::top], 2);
}

TEST(RectMesh, RefinementEdgeIsLongest)
{
    const TriMesh m = make_rect_mesh({0, 1}, {0, 3}, 3, 2);
    for (int t = 0; t < static_cast<int>(m.num_triangles()); ++t) {
        const Triangle& tri = m.triangle(t);
        auto len = [&](int i) {
            const auto [a, b] = tri.edge(i);
            const Point d = m.vertex(a) - m.vertex(b);
            return std::hypot(d.x, d.y);
        };
        for (int i = 0; i < 3; ++i)
            EXPECT_GE(len(tri.refinement_edge), len(i) - 1e-14);
    }
}

TEST(RectMesh, RejectsDegenerateInput)
{
    EXPECT_THROW(make_rect_mesh({0, 0}, {0, 1}, 1, 1), InputError);
    EXPECT_THROW(make_rect_mesh({0, 1}, {2, 1}, 1, 1), InputError);
    EXPECT_THROW(make_rect_mesh({0, 1}, {0, 1}, 0, 1), InputError);
    EXPECT_THROW(make_rect_mesh({0, 1}, {0, 1}, 1, -2), InputError);
}

TEST(LShape, HasReentrantCornerVertex)
{
    const TriMesh m = make_lshape_mesh();
    bool found = false;
    for (const Point& p : m.vertices())
        found = found || (p.x == 0.0 && p.y == 0.0);
    EXPECT_TRUE(found);
}

TEST(LShape, AreaIsThree)
{
    EXPECT_NEAR(total_area(make_lshape_mesh()), 3.0, 1e-14);
    EXPECT_NEAR(total_area(make_lshape_mesh(3)), 3.0, 1e-13);
}

TEST(LShape, ConformingWithDirichletBoundary)
{
    const TriMesh m = make_lshape_mesh(2);
    EXPECT_TRUE(is_conforming(m));
    for (const auto& e : m.boundary())
        EXPECT_EQ(e.tag, tags::dirichlet);
    // boundary length: outer perimeter of the L is 8
    double len = 0.0;
    for (const auto& e : m.boundary()) {
        const Point d = m.vertex(e.a) - m.vertex(e.b);
        len += std::hypot(d.x, d.y);
    }
    EXPECT_NEAR(len, 8.0, 1e-14);
}

TEST(TriMeshCtor, FlipsClockwiseTriangles)
{
    const TriMesh m({{0, 0}, {1, 0}, {0, 1}}, {Triangle{{0, 2, 1}, 0, 0}}, {});
    EXPECT_GT(signed_area(m.vertex(m.triangle(0).v[0]), m.vertex(m.triangle(0).v[1]), m.vertex(m.triangle(0).v[2])),
              0.0);
    // the refinement edge still names the edge {1, 2}
    const auto [a, b] = m.triangle(0).edge(m.triangle(0).refinement_edge);
    EXPECT_EQ(std::min(a, b), 1);
    EXPECT_EQ(std::max(a, b), 2);
}

TEST(TriMeshCtor, RejectsBadInput)
{
    const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}};
    EXPECT_THROW(TriMesh(pts, {Triangle{{0, 1, 1}, 0, 0}}, {}), InputError);
    EXPECT_THROW(TriMesh(pts, {Triangle{{0, 1, 3}, 0, 0}}, {}), InputError);
    EXPECT_THROW(TriMesh(pts, {Triangle{{0, 1, 2}, 3, 0}}, {}), InputError);
    EXPECT_THROW(TriMesh({{0, 0}, {1, 0}, {2, 0}}, {Triangle{{0, 1, 2}, 0, 0}}, {}), InputError);
    EXPECT_THROW(TriMesh({{0, 0}, {1, 0}, {0, NAN}}, {Triangle{{0, 1, 2}, 0, 0}}, {}), InputError);
}

TEST(UniformRefine, UnitSquareCounts)
{
    const TriMesh m = unit_square();
    EXPECT_EQ(m.num_edges(), 5u);
    const Refined r = uniform_refine(m);
    EXPECT_EQ(r.mesh.num_vertices(), 9u);
    EXPECT_EQ(r.mesh.num_triangles(), 8u);
    EXPECT_TRUE(is_conforming(r.mesh));
}

TEST(UniformRefine, TwiceMultipliesBySixteen)
{
    const TriMesh m = make_lshape_mesh();
    const TriMesh m2 = uniform_refine(uniform_refine(m).mesh).mesh;
    EXPECT_EQ(m2.num_triangles(), 16 * m.num_triangles());
    EXPECT_NEAR(total_area(m2), 3.0, 1e-12);
}

TEST(UniformRefine, VertexCountIsVerticesPlusEdges)
{
    const TriMesh m = make_rect_mesh({0, 2}, {0, 1}, 3, 2);
    EXPECT_EQ(uniform_refine(m).mesh.num_vertices(), m.num_vertices() + m.num_edges());
}

TEST(UniformRefine, ChildrenAreSimilar)
{
    const TriMesh m = make_rect_mesh({0, 1}, {0, 1}, 1, 1);
    const Refined r = uniform_refine(m);
    const double a = min_angle(m);
    EXPECT_NEAR(min_angle(r.mesh), a, 1e-12);
    for (int t = 0; t < 8; ++t)
        EXPECT_NEAR(area(r.mesh, t), 0.125, 1e-15);
}

TEST(UniformRefine, VertexOriginsDescribeMidpoints)
{
    const TriMesh m = make_rect_mesh({0, 1}, {0, 1}, 2, 1);
    const Refined r = uniform_refine(m);
    ASSERT_EQ(r.parents.vertex_origin.size(), r.mesh.num_vertices());
    for (std::size_t v = 0; v < r.mesh.num_vertices(); ++v) {
        const VertexOrigin& o = r.parents.vertex_origin[v];
        const Point expect = o.inherited() ? m.vertex(o.a) : 0.5 * (m.vertex(o.a) + m.vertex(o.b));
        EXPECT_EQ(r.mesh.vertex(static_cast<int>(v)), expect);
    }
}

TEST(Bisect, EmptyMarkSetIsIdentity)
{
    const TriMesh m = make_lshape_mesh();
    const Refined r = bisect(m, {});
    ASSERT_EQ(r.mesh.num_vertices(), m.num_vertices());
    ASSERT_EQ(r.mesh.num_triangles(), m.num_triangles());
    for (int t = 0; t < static_cast<int>(m.num_triangles()); ++t) {
        EXPECT_EQ(r.mesh.triangle(t).v, m.triangle(t).v);
        EXPECT_EQ(r.parents.child_to_parent[static_cast<std::size_t>(t)], t);
    }
}

TEST(Bisect, ClosureBisectsNeighbour)
{
    const TriMesh m = unit_square();
    const std::vector<int> marked{0};
    const Refined r = bisect(m, marked);
    EXPECT_EQ(r.mesh.num_vertices(), 5u);
    EXPECT_EQ(r.mesh.num_triangles(), 4u);
    EXPECT_TRUE(is_conforming(r.mesh));
    EXPECT_EQ(r.mesh.vertex(4), (Point{0.5, 0.5}));
}

TEST(Bisect, NewVertexIsNewestOfBothChildren)
{
    const TriMesh m = unit_square();
    const std::vector<int> marked{1};
    const Refined r = bisect(m, marked);
    for (int t = 0; t < 4; ++t) {
        const Triangle& tri = r.mesh.triangle(t);
        EXPECT_EQ(tri.v[static_cast<std::size_t>(tri.refinement_edge)], 4);
    }
}

TEST(Bisect, MinAngleBoundedOverTenGenerations)
{
    TriMesh m = make_rect_mesh({0, 1}, {0, 1}, 2, 2);
    const double a0 = min_angle(m);
    for (int gen = 0; gen < 10; ++gen) {
        // refine towards the corner (0, 0)
        const std::vector<int> marked{locate(m, {1e-4, 1e-4})};
        m = bisect(m, marked).mesh;
        EXPECT_GE(min_angle(m), 0.5 * a0);
        EXPECT_TRUE(is_conforming(m));
    }
    EXPECT_GT(m.num_triangles(), 20u);
}

TEST(Bisect, RejectsOutOfRangeIds)
{
    const TriMesh m = unit_square();
    const std::vector<int> bad{2};
    EXPECT_THROW(bisect(m, bad), InputError);
    const std::vector<int> neg{-1};
    EXPECT_THROW(bisect(m, neg), InputError);
}

TEST(ComposeParents, ChainsMaps)
{
    const TriMesh m = make_lshape_mesh();
    const Refined r1 = uniform_refine(m);
    const std::vector<int> marked{0, 5};
    const Refined r2 = bisect(r1.mesh, marked);
    const std::vector<ParentMap> chain{r1.parents, r2.parents};
    const std::vector<int> c = compose_parents(chain);
    ASSERT_EQ(c.size(), r2.mesh.num_triangles());
    for (std::size_t t = 0; t < c.size(); ++t)
        EXPECT_EQ(c[t], r1.parents.child_to_parent[static_cast<std::size_t>(r2.parents.child_to_parent[t])]);
}

TEST(Svg, OnePolygonPerTriangle)
{
    const TriMesh m = make_rect_mesh({0, 3}, {0, 6}, 2, 4);
    std::ostringstream os;
    write_svg(m, os);
    const std::string s = os.str();
    std::size_t count = 0;
    for (std::size_t pos = s.find("<polygon"); pos != std::string::npos; pos = s.find("<polygon", pos + 1))
        ++count;
    EXPECT_EQ(count, m.num_triangles());
    EXPECT_NE(s.find("viewBox=\"0 0 3 6\""), std::string::npos);
    // 0.2% of the bounding-box diagonal
    std::ostringstream width;
    width << "stroke-width=\"" << 0.002 * std::hypot(3.0, 6.0);
    EXPECT_NE(s.find(width.str().substr(0, 20)), std::string::npos);
}
