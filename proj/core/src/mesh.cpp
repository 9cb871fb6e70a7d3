#include "lsfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "lsfem/errors.hpp"

namespace lsfem {
namespace {

using EdgeKey = std::uint64_t;

EdgeKey edge_key(int a, int b)
{
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
}

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

int longest_edge(const std::vector<Point>& pts, const Triangle& t)
{
    int best = 0;
    double best_len = -1.0;
    for (int i = 0; i < 3; ++i) {
        const auto [a, b] = t.edge(i);
        const double len = dist(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)]);
        // ties resolved towards the lower index
        if (len > best_len * (1.0 + 1e-12)) {
            best = i;
            best_len = len;
        }
    }
    return best;
}

std::unordered_map<EdgeKey, int> count_edge_uses(const TriMesh& mesh)
{
    std::unordered_map<EdgeKey, int> uses;
    uses.reserve(mesh.num_triangles() * 2);
    for (const auto& t : mesh.triangles())
        for (int i = 0; i < 3; ++i) {
            const auto [a, b] = t.edge(i);
            ++uses[edge_key(a, b)];
        }
    return uses;
}

ParentMap identity_map(const TriMesh& mesh)
{
    ParentMap pm;
    pm.child_to_parent.resize(mesh.num_triangles());
    for (std::size_t i = 0; i < pm.child_to_parent.size(); ++i)
        pm.child_to_parent[i] = static_cast<int>(i);
    pm.vertex_origin.resize(mesh.num_vertices());
    for (std::size_t i = 0; i < pm.vertex_origin.size(); ++i)
        pm.vertex_origin[i] = VertexOrigin{static_cast<int>(i), -1};
    return pm;
}

// Triangles with their refinement edge set to the longest edge; boundary
// edges are the one-sided edges, tagged `tag`.
TriMesh finish_mesh(std::vector<Point> pts, std::vector<Triangle> tris, int tag)
{
    for (auto& t : tris)
        t.refinement_edge = longest_edge(pts, t);
    std::unordered_map<EdgeKey, int> uses;
    for (const auto& t : tris)
        for (int i = 0; i < 3; ++i) {
            const auto [a, b] = t.edge(i);
            ++uses[edge_key(a, b)];
        }
    std::vector<BoundaryEdge> boundary;
    for (const auto& t : tris)
        for (int i = 0; i < 3; ++i) {
            const auto [a, b] = t.edge(i);
            if (uses[edge_key(a, b)] == 1)
                boundary.push_back({a, b, tag});
        }
    return TriMesh(std::move(pts), std::move(tris), std::move(boundary));
}

} // namespace

TriMesh::TriMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
                 std::vector<BoundaryEdge> boundary, int generation)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_(std::move(boundary)),
      generation_(generation)
{
    for (const auto& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw InputError("TriMesh: non-finite vertex coordinate");
    const auto nv = static_cast<int>(vertices_.size());
    for (auto& t : triangles_) {
        for (int id : t.v)
            if (id < 0 || id >= nv)
                throw InputError("TriMesh: vertex id out of range");
        if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2])
            throw InputError("TriMesh: triangle with repeated vertex");
        if (t.refinement_edge < 0 || t.refinement_edge > 2)
            throw InputError("TriMesh: refinement edge index must be 0, 1 or 2");
        const double a = signed_area(vertex(t.v[0]), vertex(t.v[1]), vertex(t.v[2]));
        if (a == 0.0)
            throw InputError("TriMesh: degenerate triangle");
        if (a < 0.0) {
            std::swap(t.v[1], t.v[2]);
            if (t.refinement_edge != 0)
                t.refinement_edge = 3 - t.refinement_edge;
        }
    }
    for (const auto& e : boundary_)
        if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv)
            throw InputError("TriMesh: boundary edge vertex out of range");
}

std::array<Point, 3> TriMesh::corners(int t) const
{
    const auto& tri = triangle(t);
    return {vertex(tri.v[0]), vertex(tri.v[1]), vertex(tri.v[2])};
}

std::size_t TriMesh::num_edges() const { return count_edge_uses(*this).size(); }

double signed_area(const Point& a, const Point& b, const Point& c)
{
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double area(const TriMesh& mesh, int t)
{
    const auto c = mesh.corners(t);
    return signed_area(c[0], c[1], c[2]);
}

double total_area(const TriMesh& mesh)
{
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        sum += area(mesh, static_cast<int>(t));
    return sum;
}

Point centroid(const TriMesh& mesh, int t)
{
    const auto c = mesh.corners(t);
    return {(c[0].x + c[1].x + c[2].x) / 3.0, (c[0].y + c[1].y + c[2].y) / 3.0};
}

std::array<double, 3> barycentric(const TriMesh& mesh, int t, const Point& p)
{
    const auto c = mesh.corners(t);
    const double total = signed_area(c[0], c[1], c[2]);
    const double l0 = signed_area(p, c[1], c[2]) / total;
    const double l1 = signed_area(c[0], p, c[2]) / total;
    return {l0, l1, 1.0 - l0 - l1};
}

double min_angle(const TriMesh& mesh)
{
    double smallest = std::numbers::pi;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto c = mesh.corners(static_cast<int>(t));
        for (int i = 0; i < 3; ++i) {
            const Point u = c[(i + 1) % 3] - c[i];
            const Point w = c[(i + 2) % 3] - c[i];
            const double cosang = (u.x * w.x + u.y * w.y) / (std::hypot(u.x, u.y) * std::hypot(w.x, w.y));
            smallest = std::min(smallest, std::acos(std::clamp(cosang, -1.0, 1.0)));
        }
    }
    return smallest;
}

bool is_conforming(const TriMesh& mesh)
{
    const auto uses = count_edge_uses(mesh);
    std::unordered_set<EdgeKey> boundary;
    for (const auto& e : mesh.boundary())
        if (!boundary.insert(edge_key(e.a, e.b)).second)
            return false;
    std::size_t one_sided = 0;
    for (const auto& [key, n] : uses) {
        if (n < 1 || n > 2)
            return false;
        if (n == 1) {
            ++one_sided;
            if (!boundary.contains(key))
                return false;
        }
    }
    return one_sided == boundary.size();
}

TriMesh make_rect_mesh(Interval x, Interval y, int nx, int ny)
{
    if (nx < 1 || ny < 1)
        throw InputError("make_rect_mesh: nx and ny must be at least 1");
    if (!(x.hi > x.lo) || !(y.hi > y.lo))
        throw InputError("make_rect_mesh: degenerate interval");

    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            pts.push_back({x.lo + (x.hi - x.lo) * i / nx, y.lo + (y.hi - y.lo) * j / ny});
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };

    std::vector<Triangle> tris;
    tris.reserve(static_cast<std::size_t>(2 * nx * ny));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            tris.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, 0, 0});
            tris.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}, 0, 0});
        }
    for (auto& t : tris)
        t.refinement_edge = longest_edge(pts, t);

    std::vector<BoundaryEdge> boundary;
    for (int i = 0; i < nx; ++i) {
        boundary.push_back({id(i, 0), id(i + 1, 0), tags::bottom});
        boundary.push_back({id(i, ny), id(i + 1, ny), tags::top});
    }
    for (int j = 0; j < ny; ++j) {
        boundary.push_back({id(0, j), id(0, j + 1), tags::left});
        boundary.push_back({id(nx, j), id(nx, j + 1), tags::right});
    }
    return TriMesh(std::move(pts), std::move(tris), std::move(boundary));
}

TriMesh make_lshape_mesh(int cells_per_unit)
{
    if (cells_per_unit < 1)
        throw InputError("make_lshape_mesh: cells_per_unit must be at least 1");
    const int n = 2 * cells_per_unit;
    const double h = 2.0 / n;
    std::vector<int> index(static_cast<std::size_t>((n + 1) * (n + 1)), -1);
    std::vector<Point> pts;
    auto id = [&](int i, int j) {
        auto& slot = index[static_cast<std::size_t>(j * (n + 1) + i)];
        if (slot < 0) {
            slot = static_cast<int>(pts.size());
            pts.push_back({-1.0 + i * h, -1.0 + j * h});
        }
        return slot;
    };
    std::vector<Triangle> tris;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            // the removed quadrant [0,1] x [-1,0]
            if (i >= cells_per_unit && j < cells_per_unit)
                continue;
            tris.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, 0, 0});
            tris.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}, 0, 0});
        }
    return finish_mesh(std::move(pts), std::move(tris), tags::dirichlet);
}

Refined uniform_refine(const TriMesh& mesh)
{
    std::vector<Point> pts(mesh.vertices().begin(), mesh.vertices().end());
    ParentMap pm;
    pm.vertex_origin.reserve(pts.size() * 4);
    for (std::size_t i = 0; i < pts.size(); ++i)
        pm.vertex_origin.push_back({static_cast<int>(i), -1});

    std::unordered_map<EdgeKey, int> mid;
    mid.reserve(mesh.num_triangles() * 2);
    auto midpoint = [&](int a, int b) {
        const auto [it, fresh] = mid.try_emplace(edge_key(a, b), static_cast<int>(pts.size()));
        if (fresh) {
            pts.push_back(0.5 * (pts[static_cast<std::size_t>(a)] + pts[static_cast<std::size_t>(b)]));
            pm.vertex_origin.push_back({std::min(a, b), std::max(a, b)});
        }
        return it->second;
    };

    std::vector<Triangle> tris;
    tris.reserve(mesh.num_triangles() * 4);
    pm.child_to_parent.reserve(mesh.num_triangles() * 4);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        const auto& v = tri.v;
        const int m0 = midpoint(v[1], v[2]);
        const int m1 = midpoint(v[2], v[0]);
        const int m2 = midpoint(v[0], v[1]);
        // Each child is a scaled (the middle one point-reflected) copy of the
        // parent with matching local vertex order, so the refinement edge
        // index carries over unchanged.
        const int r = tri.refinement_edge;
        tris.push_back({{v[0], m2, m1}, r, tri.region});
        tris.push_back({{m2, v[1], m0}, r, tri.region});
        tris.push_back({{m1, m0, v[2]}, r, tri.region});
        tris.push_back({{m0, m1, m2}, r, tri.region});
        for (int k = 0; k < 4; ++k)
            pm.child_to_parent.push_back(static_cast<int>(t));
    }

    std::vector<BoundaryEdge> boundary;
    boundary.reserve(mesh.boundary().size() * 2);
    for (const auto& e : mesh.boundary()) {
        const int m = mid.at(edge_key(e.a, e.b));
        boundary.push_back({e.a, m, e.tag});
        boundary.push_back({m, e.b, e.tag});
    }
    return {TriMesh(std::move(pts), std::move(tris), std::move(boundary), mesh.generation() + 1),
            std::move(pm)};
}

Refined bisect(const TriMesh& mesh, std::span<const int> marked)
{
    if (marked.empty())
        return {mesh, identity_map(mesh)};

    const auto ntri = static_cast<int>(mesh.num_triangles());
    std::unordered_map<EdgeKey, std::vector<int>> edge_tris;
    edge_tris.reserve(mesh.num_triangles() * 2);
    for (int t = 0; t < ntri; ++t)
        for (int i = 0; i < 3; ++i) {
            const auto [a, b] = mesh.triangle(t).edge(i);
            edge_tris[edge_key(a, b)].push_back(t);
        }

    auto ref_edge = [&](int t) {
        const auto& tri = mesh.triangle(t);
        const auto [a, b] = tri.edge(tri.refinement_edge);
        return edge_key(a, b);
    };

    // Closure: any triangle with a marked edge gets its refinement edge marked.
    std::unordered_set<EdgeKey> marked_edges;
    std::vector<EdgeKey> work;
    for (int t : marked) {
        if (t < 0 || t >= ntri)
            throw InputError("bisect: marked triangle id out of range");
        const EdgeKey e = ref_edge(t);
        if (marked_edges.insert(e).second)
            work.push_back(e);
    }
    while (!work.empty()) {
        const EdgeKey e = work.back();
        work.pop_back();
        for (int t : edge_tris.at(e)) {
            const EdgeKey r = ref_edge(t);
            if (marked_edges.insert(r).second)
                work.push_back(r);
        }
    }

    std::vector<Point> pts(mesh.vertices().begin(), mesh.vertices().end());
    ParentMap pm;
    for (std::size_t i = 0; i < pts.size(); ++i)
        pm.vertex_origin.push_back({static_cast<int>(i), -1});

    // Midpoints numbered in triangle/edge order for determinism.
    std::unordered_map<EdgeKey, int> mid;
    mid.reserve(marked_edges.size());
    for (int t = 0; t < ntri; ++t)
        for (int i = 0; i < 3; ++i) {
            const auto [a, b] = mesh.triangle(t).edge(i);
            const EdgeKey key = edge_key(a, b);
            if (marked_edges.contains(key) && !mid.contains(key)) {
                mid.emplace(key, static_cast<int>(pts.size()));
                pts.push_back(0.5 * (pts[static_cast<std::size_t>(a)] + pts[static_cast<std::size_t>(b)]));
                pm.vertex_origin.push_back({std::min(a, b), std::max(a, b)});
            }
        }

    std::vector<Triangle> tris;
    tris.reserve(mesh.num_triangles() + 3 * mid.size());
    // Children have their new vertex in slot 0 and inherit the two old
    // non-refinement edges as their refinement edges, so at most two
    // further levels of recursion happen.
    auto refine = [&](auto&& self, const Triangle& tri, int parent) -> void {
        const auto [p, q] = tri.edge(tri.refinement_edge);
        const auto it = mid.find(edge_key(p, q));
        if (it == mid.end()) {
            tris.push_back(tri);
            pm.child_to_parent.push_back(parent);
            return;
        }
        const int r = tri.refinement_edge;
        const int apex = tri.v[r];
        const int b = tri.v[(r + 1) % 3];
        const int c = tri.v[(r + 2) % 3];
        const int m = it->second;
        self(self, Triangle{{m, apex, b}, 0, tri.region}, parent);
        self(self, Triangle{{m, c, apex}, 0, tri.region}, parent);
    };
    for (int t = 0; t < ntri; ++t)
        refine(refine, mesh.triangle(t), t);

    std::vector<BoundaryEdge> boundary;
    for (const auto& e : mesh.boundary()) {
        const auto it = mid.find(edge_key(e.a, e.b));
        if (it == mid.end()) {
            boundary.push_back(e);
        } else {
            boundary.push_back({e.a, it->second, e.tag});
            boundary.push_back({it->second, e.b, e.tag});
        }
    }
    return {TriMesh(std::move(pts), std::move(tris), std::move(boundary), mesh.generation() + 1),
            std::move(pm)};
}

std::vector<int> compose_parents(std::span<const ParentMap> chain)
{
    if (chain.empty())
        return {};
    std::vector<int> result = chain.back().child_to_parent;
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it)
        for (int& p : result)
            p = it->child_to_parent[static_cast<std::size_t>(p)];
    return result;
}

} // namespace lsfem
