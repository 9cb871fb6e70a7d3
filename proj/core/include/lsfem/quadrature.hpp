#pragma once

#include <array>
#include <vector>

namespace lsfem {

/// Symmetric rule on a triangle in barycentric coordinates. Weights sum to
/// one; multiply by the triangle area when integrating.
struct QuadRule {
    int degree = 0;
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
};

/// degree 1: centroid; degree 2: edge midpoints; degree 4: 6-point Gauss.
/// Throws InputError for any other degree.
QuadRule quad_rule(int degree);

} // namespace lsfem
