#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lsfem/problem.hpp"
#include "lsfem/space.hpp"

namespace lsfem {

/// -Laplace u = 0 on the L-shape with u = r^{2/3} sin(2 phi / 3); the
/// boundary data is the trace of u.
ProblemDef poisson_lshape();

/// Heat equation on (0,3)x(0,6) with a smooth solution supported in the band
/// x <= t <= x + 2.
ProblemDef heat_smooth();
/// Heat equation on (0,1)^2 with an indicator source on a slanted strip.
ProblemDef heat_discontinuous();
/// Heat equation on (0,1)^2 with f = 2 and initial value 1.
ProblemDef heat_incompatible();
/// Wave equation on (0,3)x(0,6), same exact solution as heat_smooth.
ProblemDef wave_smooth();
/// Wave equation on (0,1)^2 with f = 2, u(x,0) = 1, d_t u(x,0) = 0.
ProblemDef wave_incompatible();

/// Looks a problem up by its name. Throws InputError for unknown names.
ProblemDef problem_by_name(std::string_view name);
std::vector<std::string> problem_names();

/// Closed forms of the smooth space-time solution and its derivatives.
namespace smooth_band {
double value(const Point& p);
Point gradient(const Point& p);
double dtt(const Point& p);
double dxx(const Point& p);
double heat_source(const Point& p);
double wave_source(const Point& p);
} // namespace smooth_band

struct ErrorNorms {
    double l2 = 0.0;
    double energy = 0.0;
};

/// L2 error and energy error (full gradient for Poisson and wave, x-derivative
/// for heat) of the P1 function with total-dof coefficients `coeffs`, by
/// degree-4 quadrature on every triangle of the space's mesh.
ErrorNorms compute_errors(const FeSpace& space, const Vector& coeffs, const ExactSolution& exact, ProblemKind kind);
/// Throws InputError if `exact` is empty.
ErrorNorms compute_errors(const FeSpace& space, const Vector& coeffs, const std::optional<ExactSolution>& exact,
                          ProblemKind kind);

} // namespace lsfem
