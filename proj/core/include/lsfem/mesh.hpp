#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace lsfem {

/// A point of the computational domain: (x, y) for elliptic problems,
/// (x, t) for space-time problems.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Boundary tags used by the mesh generators.
namespace tags {
inline constexpr int left = 1;
inline constexpr int right = 2;
inline constexpr int bottom = 3;
inline constexpr int top = 4;
inline constexpr int dirichlet = 5;
} // namespace tags

/// Counterclockwise triangle. Edge i is the edge opposite vertex i;
/// `refinement_edge` names the edge bisected by newest vertex bisection,
/// so vertex `refinement_edge` is the newest vertex.
struct Triangle {
    std::array<int, 3> v{};
    int refinement_edge = 0;
    int region = 0;

    std::pair<int, int> edge(int i) const { return {v[(i + 1) % 3], v[(i + 2) % 3]}; }
};

struct BoundaryEdge {
    int a = 0;
    int b = 0;
    int tag = 0;
};

/// Immutable conforming triangulation. Refinement produces a new mesh.
class TriMesh {
public:
    TriMesh() = default;
    /// Validates orientation (flips clockwise input), distinct vertex ids,
    /// and finite coordinates. Throws InputError otherwise.
    TriMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
            std::vector<BoundaryEdge> boundary, int generation = 0);

    std::span<const Point> vertices() const { return vertices_; }
    std::span<const Triangle> triangles() const { return triangles_; }
    std::span<const BoundaryEdge> boundary() const { return boundary_; }
    int generation() const { return generation_; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const Triangle& triangle(int i) const { return triangles_[static_cast<std::size_t>(i)]; }
    std::array<Point, 3> corners(int t) const;

    /// Number of distinct edges.
    std::size_t num_edges() const;

private:
    std::vector<Point> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<BoundaryEdge> boundary_;
    int generation_ = 0;
};

/// How a fine vertex arose: inherited from coarse vertex `a` (b < 0), or the
/// midpoint of the coarse edge (a, b).
struct VertexOrigin {
    int a = 0;
    int b = -1;
    bool inherited() const { return b < 0; }
};

/// Relates a refined mesh to the mesh it was produced from.
struct ParentMap {
    std::vector<int> child_to_parent;
    std::vector<VertexOrigin> vertex_origin;
};

struct Refined {
    TriMesh mesh;
    ParentMap parents;
};

double signed_area(const Point& a, const Point& b, const Point& c);
double area(const TriMesh& mesh, int t);
double total_area(const TriMesh& mesh);
Point centroid(const TriMesh& mesh, int t);
/// Barycentric coordinates of p with respect to triangle t.
std::array<double, 3> barycentric(const TriMesh& mesh, int t, const Point& p);
/// Smallest interior angle over all triangles, in radians.
double min_angle(const TriMesh& mesh);
/// True if every interior edge has two incident triangles, every boundary
/// edge one, and the boundary edge list matches the one-sided edges.
bool is_conforming(const TriMesh& mesh);

/// Structured grid, each cell split along its lower-left to upper-right
/// diagonal. Sides tagged left/right/bottom/top. Throws InputError for
/// empty intervals or zero cell counts.
TriMesh make_rect_mesh(Interval x, Interval y, int nx, int ny);

/// (-1,1)^2 minus [0,1]x[-1,0], `cells_per_unit` cells per unit length,
/// all boundary edges tagged `tags::dirichlet`.
TriMesh make_lshape_mesh(int cells_per_unit = 1);

/// Red refinement: each triangle split into four similar children.
Refined uniform_refine(const TriMesh& mesh);

/// Newest vertex bisection of the marked triangles followed by the
/// conforming closure. An empty mark set returns an identical mesh.
Refined bisect(const TriMesh& mesh, std::span<const int> marked);

/// Map from the triangles at the end of a refinement chain to the triangles
/// of the mesh at its start.
std::vector<int> compose_parents(std::span<const ParentMap> chain);

/// One `<polygon>` per triangle, viewBox equal to the bounding box.
void write_svg(const TriMesh& mesh, std::ostream& out);

} // namespace lsfem
