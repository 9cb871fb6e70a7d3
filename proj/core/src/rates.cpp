#include "lsfem/rates.hpp"

#include <algorithm>
#include <cmath>

#include "lsfem/errors.hpp"

namespace lsfem {

namespace {

void check(std::span<const double> dofs, std::span<const double> err)
{
    if (dofs.size() != err.size())
        throw InputError("rate fit: dof and error sequences differ in length");
    if (dofs.size() < 2)
        throw InputError("rate fit: need at least two levels");
    for (std::size_t i = 0; i < dofs.size(); ++i)
        if (!(dofs[i] > 0.0) || !(err[i] > 0.0) || !std::isfinite(err[i]))
            throw InputError("rate fit: values must be positive and finite");
}

} // namespace

double fit_slope(std::span<const double> dofs, std::span<const double> err)
{
    check(dofs, err);
    const auto n = static_cast<double>(dofs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < dofs.size(); ++i) {
        mx += std::log(dofs[i]);
        my += std::log(err[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < dofs.size(); ++i) {
        const double dx = std::log(dofs[i]) - mx;
        sxy += dx * (std::log(err[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0)
        throw InputError("rate fit: all dof counts are equal");
    return sxy / sxx;
}

double tail_slope(std::span<const double> dofs, std::span<const double> err, int count)
{
    const std::size_t k = std::min(dofs.size(), static_cast<std::size_t>(count < 2 ? 2 : count));
    return fit_slope(dofs.last(k), err.last(k));
}

double dofs_to_reach(std::span<const double> dofs, std::span<const double> err, double target)
{
    check(dofs, err);
    if (!(target > 0.0))
        throw InputError("dofs_to_reach: target must be positive");
    const double lt = std::log(target);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
        if (err[i] == target)
            return dofs[i];
        if (i + 1 < dofs.size() && (err[i] - target) * (err[i + 1] - target) < 0.0) {
            const double e0 = std::log(err[i]);
            const double e1 = std::log(err[i + 1]);
            const double s = (lt - e0) / (e1 - e0);
            return std::exp(std::log(dofs[i]) + s * (std::log(dofs[i + 1]) - std::log(dofs[i])));
        }
    }
    // no bracket: extrapolate from the end closest to the target
    const bool below = std::abs(std::log(err.back()) - lt) <= std::abs(std::log(err.front()) - lt);
    const double slope = below ? tail_slope(dofs, err) : fit_slope(dofs.first(std::min<std::size_t>(3, dofs.size())),
                                                                    err.first(std::min<std::size_t>(3, dofs.size())));
    if (slope == 0.0)
        throw InputError("dofs_to_reach: flat sequence never reaches the target");
    const std::size_t i = below ? dofs.size() - 1 : 0;
    return std::exp(std::log(dofs[i]) + (lt - std::log(err[i])) / slope);
}

} // namespace lsfem
