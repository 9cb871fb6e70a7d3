#include "lsfem/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lsfem/errors.hpp"
#include "lsfem/quadrature.hpp"

namespace lsfem {

const char* to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::Poisson:
        return "poisson";
    case ProblemKind::Heat:
        return "heat";
    case ProblemKind::Wave:
        return "wave";
    }
    return "unknown";
}

TriMesh make_initial_mesh(const ProblemDef& problem, int nx, int ny)
{
    if (problem.domain.shape == Domain::Shape::LShape)
        return make_lshape_mesh(nx);
    return make_rect_mesh(problem.domain.x, problem.domain.y, nx, ny);
}

namespace smooth_band {
namespace {

constexpr double k = std::numbers::pi / 3.0;

// u = -1/2 g(s) S(x) with s = t - x, g(s) = (s^2 - 2s)^3, S(x) = sin(k x),
// nonzero only for 0 <= s <= 2.
struct Terms {
    double g, dg, ddg, S, dS, ddS;
};

bool in_band(const Point& p)
{
    const double s = p.y - p.x;
    return s >= 0.0 && s <= 2.0;
}

Terms terms(const Point& p)
{
    const double s = p.y - p.x;
    const double q = s * s - 2.0 * s;
    const double dq = 2.0 * s - 2.0;
    const double S = std::sin(k * p.x);
    return {q * q * q, 3.0 * q * q * dq, 6.0 * q * dq * dq + 6.0 * q * q, S, k * std::cos(k * p.x), -k * k * S};
}

} // namespace

double value(const Point& p)
{
    if (!in_band(p))
        return 0.0;
    const Terms a = terms(p);
    return -0.5 * a.g * a.S;
}

Point gradient(const Point& p)
{
    if (!in_band(p))
        return {0.0, 0.0};
    const Terms a = terms(p);
    return {-0.5 * (-a.dg * a.S + a.g * a.dS), -0.5 * a.dg * a.S};
}

double dtt(const Point& p)
{
    if (!in_band(p))
        return 0.0;
    const Terms a = terms(p);
    return -0.5 * a.ddg * a.S;
}

double dxx(const Point& p)
{
    if (!in_band(p))
        return 0.0;
    const Terms a = terms(p);
    return -0.5 * (a.ddg * a.S - 2.0 * a.dg * a.dS + a.g * a.ddS);
}

double heat_source(const Point& p) { return gradient(p).y - dxx(p); }

double wave_source(const Point& p) { return dtt(p) - dxx(p); }

} // namespace smooth_band

namespace {

ExactSolution lshape_exact()
{
    auto angle = [](const Point& p) {
        double phi = std::atan2(p.y, p.x);
        if (phi < 0.0)
            phi += 2.0 * std::numbers::pi;
        return phi;
    };
    ExactSolution e;
    e.value = [angle](const Point& p) {
        const double r = std::hypot(p.x, p.y);
        if (r == 0.0)
            return 0.0;
        return std::pow(r, 2.0 / 3.0) * std::sin(2.0 / 3.0 * angle(p));
    };
    // grad u = 2/3 r^{-1/3} (-sin(phi/3), cos(phi/3))
    e.gradient = [angle](const Point& p) -> Point {
        const double r = std::hypot(p.x, p.y);
        if (r == 0.0)
            return {0.0, 0.0};
        const double phi = angle(p);
        const double c = 2.0 / 3.0 * std::pow(r, -1.0 / 3.0);
        return {-c * std::sin(phi / 3.0), c * std::cos(phi / 3.0)};
    };
    return e;
}

ExactSolution band_exact() { return {smooth_band::value, smooth_band::gradient}; }

// Initial value one, lateral value zero. The two bottom corners take the
// initial value: giving them the lateral value forces a 0-to-1 ramp across
// one element whose x-derivative energy does not shrink under refinement.
double unit_initial_value(const Point& p) { return p.y <= 0.0 ? 1.0 : 0.0; }

ProblemDef space_time(std::string name, ProblemKind kind, Interval x, Interval t)
{
    ProblemDef d;
    d.name = std::move(name);
    d.kind = kind;
    d.domain = {Domain::Shape::Rectangle, x, t};
    d.x_bc = {{tags::left, tags::right, tags::bottom}};
    if (kind == ProblemKind::Wave)
        d.y_bc = {{tags::left, tags::right, tags::top}};
    else
        d.y_bc = {{tags::left, tags::right}};
    return d;
}

} // namespace

ProblemDef poisson_lshape()
{
    ProblemDef d;
    d.name = "poisson_lshape";
    d.kind = ProblemKind::Poisson;
    d.domain = {Domain::Shape::LShape, {-1.0, 1.0}, {-1.0, 1.0}};
    d.source = [](const Point&) { return 0.0; };
    d.exact = lshape_exact();
    d.dirichlet = d.exact->value;
    d.x_bc = {{tags::dirichlet}};
    d.y_bc = {{tags::dirichlet}};
    return d;
}

ProblemDef heat_smooth()
{
    ProblemDef d = space_time("heat_smooth", ProblemKind::Heat, {0.0, 3.0}, {0.0, 6.0});
    d.source = smooth_band::heat_source;
    d.exact = band_exact();
    return d;
}

ProblemDef heat_discontinuous()
{
    ProblemDef d = space_time("heat_discontinuous", ProblemKind::Heat, {0.0, 1.0}, {0.0, 1.0});
    d.source = [](const Point& p) {
        const bool strip = p.x > 0.0 && p.x < 1.0 && p.y > 0.1 && p.y < 0.5;
        return (strip && p.x - 0.1 <= p.y && p.y <= p.x - 0.05) ? 1.0 : 0.0;
    };
    return d;
}

ProblemDef heat_incompatible()
{
    ProblemDef d = space_time("heat_incompatible", ProblemKind::Heat, {0.0, 1.0}, {0.0, 1.0});
    d.source = [](const Point&) { return 2.0; };
    d.dirichlet = unit_initial_value;
    d.default_theta = 0.9;
    return d;
}

ProblemDef wave_smooth()
{
    ProblemDef d = space_time("wave_smooth", ProblemKind::Wave, {0.0, 3.0}, {0.0, 6.0});
    d.source = smooth_band::wave_source;
    d.exact = band_exact();
    return d;
}

ProblemDef wave_incompatible()
{
    ProblemDef d = space_time("wave_incompatible", ProblemKind::Wave, {0.0, 1.0}, {0.0, 1.0});
    d.source = [](const Point&) { return 2.0; };
    d.dirichlet = unit_initial_value;
    d.default_theta = 0.9;
    return d;
}

std::vector<std::string> problem_names()
{
    return {"poisson_lshape",    "heat_smooth", "heat_discontinuous",
            "heat_incompatible", "wave_smooth", "wave_incompatible"};
}

ProblemDef problem_by_name(std::string_view name)
{
    if (name == "poisson_lshape")
        return poisson_lshape();
    if (name == "heat_smooth")
        return heat_smooth();
    if (name == "heat_discontinuous")
        return heat_discontinuous();
    if (name == "heat_incompatible")
        return heat_incompatible();
    if (name == "wave_smooth")
        return wave_smooth();
    if (name == "wave_incompatible")
        return wave_incompatible();
    throw InputError("unknown problem '" + std::string(name) + "'");
}

ErrorNorms compute_errors(const FeSpace& space, const Vector& coeffs, const ExactSolution& exact, ProblemKind kind)
{
    const TriMesh& mesh = space.mesh();
    if (coeffs.size() != space.total_dofs())
        throw InputError("compute_errors: coefficient vector must cover all vertices");
    const QuadRule quad = quad_rule(4);
    double l2 = 0.0;
    double energy = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto c = mesh.corners(static_cast<int>(t));
        const auto& v = mesh.triangles()[t].v;
        const double a2 = 2.0 * signed_area(c[0], c[1], c[2]);
        // constant gradient of the discrete function
        Point gh{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            const Point& q1 = c[(i + 1) % 3];
            const Point& q2 = c[(i + 2) % 3];
            gh = gh + (coeffs[v[i]] / a2) * Point{q1.y - q2.y, q2.x - q1.x};
        }
        const double area = 0.5 * std::abs(a2);
        for (std::size_t q = 0; q < quad.points.size(); ++q) {
            const auto& l = quad.points[q];
            const Point x = l[0] * c[0] + l[1] * c[1] + l[2] * c[2];
            const double uh = l[0] * coeffs[v[0]] + l[1] * coeffs[v[1]] + l[2] * coeffs[v[2]];
            const double du = exact.value(x) - uh;
            const Point dg = exact.gradient(x) - gh;
            const double w = quad.weights[q] * area;
            l2 += w * du * du;
            energy += w * (kind == ProblemKind::Heat ? dg.x * dg.x : dg.x * dg.x + dg.y * dg.y);
        }
    }
    return {std::sqrt(l2), std::sqrt(energy)};
}

ErrorNorms compute_errors(const FeSpace& space, const Vector& coeffs, const std::optional<ExactSolution>& exact,
                          ProblemKind kind)
{
    if (!exact)
        throw InputError("compute_errors: problem has no exact solution");
    return compute_errors(space, coeffs, *exact, kind);
}

} // namespace lsfem
