#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <lsfem/errors.hpp>
#include <lsfem/rates.hpp>

using namespace lsfem;

TEST(FitSlope, ExactPowerLaws)
{
    const std::vector<double> n{10, 40, 160, 640};
    std::vector<double> a, b;
    for (double x : n) {
        a.push_back(3.0 * std::pow(x, -0.5));
        b.push_back(0.2 * std::pow(x, -1.0));
    }
    EXPECT_NEAR(fit_slope(n, a), -0.5, 1e-12);
    EXPECT_NEAR(fit_slope(n, b), -1.0, 1e-12);
    EXPECT_NEAR(tail_slope(n, a), -0.5, 1e-12);
}

TEST(FitSlope, TailUsesLastThree)
{
    const std::vector<double> n{1, 10, 100, 1000};
    const std::vector<double> e{1, 1, 0.1, 0.01};
    EXPECT_NEAR(tail_slope(n, e), -2.0 / 3.0 * 1.5, 1e-12);
}

TEST(FitSlope, RejectsBadInput)
{
    EXPECT_THROW(fit_slope(std::vector<double>{1}, std::vector<double>{1}), InputError);
    EXPECT_THROW(fit_slope(std::vector<double>{1, 2}, std::vector<double>{1}), InputError);
    EXPECT_THROW(fit_slope(std::vector<double>{1, 2}, std::vector<double>{1, 0}), InputError);
    EXPECT_THROW(fit_slope(std::vector<double>{2, 2}, std::vector<double>{1, 3}), InputError);
}

TEST(DofsToReach, InterpolatesInLogLog)
{
    const std::vector<double> n{100, 400, 1600};
    const std::vector<double> e{1.0, 0.5, 0.25};
    EXPECT_NEAR(dofs_to_reach(n, e, 0.5), 400.0, 1e-9);
    EXPECT_NEAR(dofs_to_reach(n, e, std::sqrt(0.5)), 200.0, 1e-9);
}

TEST(DofsToReach, ExtrapolatesWithSlope)
{
    const std::vector<double> n{100, 400, 1600};
    const std::vector<double> e{1.0, 0.5, 0.25};
    EXPECT_NEAR(dofs_to_reach(n, e, 0.125), 6400.0, 1e-6);
    EXPECT_NEAR(dofs_to_reach(n, e, 2.0), 25.0, 1e-9);
}
