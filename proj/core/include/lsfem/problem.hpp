#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lsfem/mesh.hpp"
#include "lsfem/space.hpp"

namespace lsfem {

enum class ProblemKind { Poisson, Heat, Wave };

const char* to_string(ProblemKind kind);

struct ExactSolution {
    ScalarField value;
    std::function<Point(const Point&)> gradient;
};

struct Domain {
    enum class Shape { Rectangle, LShape };
    Shape shape = Shape::Rectangle;
    Interval x;
    Interval y;
};

/// One boundary value problem: forms (via `kind`), data, and the boundary
/// pieces carrying essential conditions for the ansatz (x_bc) and test
/// (y_bc) spaces.
struct ProblemDef {
    std::string name;
    ProblemKind kind = ProblemKind::Poisson;
    ScalarField source;
    std::optional<ExactSolution> exact;
    /// Values imposed on the constrained vertices of the ansatz space.
    std::optional<ScalarField> dirichlet;
    BcSelector x_bc;
    BcSelector y_bc;
    Domain domain;
    double default_theta = 0.5;
};

/// Initial mesh for the problem's domain: an nx-by-ny grid for rectangles,
/// `nx` cells per unit length for the L-shape.
TriMesh make_initial_mesh(const ProblemDef& problem, int nx, int ny);

} // namespace lsfem
