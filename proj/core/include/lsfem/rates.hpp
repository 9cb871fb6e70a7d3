#pragma once

#include <span>

namespace lsfem {

/// Least-squares slope of log(err) against log(dofs). Needs at least two
/// points with positive values; throws InputError otherwise.
double fit_slope(std::span<const double> dofs, std::span<const double> err);

/// fit_slope over the last `count` entries (all of them if fewer).
double tail_slope(std::span<const double> dofs, std::span<const double> err, int count = 3);

/// Dof count at which the sequence reaches `target`, by log-log linear
/// interpolation between the first bracketing pair. Without a bracket the
/// tail slope extrapolates from the nearest end.
double dofs_to_reach(std::span<const double> dofs, std::span<const double> err, double target);

} // namespace lsfem
