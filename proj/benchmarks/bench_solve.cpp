#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include <lsfem/assemble.hpp>
#include <lsfem/problems.hpp>
#include <lsfem/solver.hpp>

using namespace lsfem;

namespace {

struct Nested {
    FeSpace trial;
    FeSpace test;
    Prolongation prolongation;
};

Nested nested(const ProblemDef& p, int n)
{
    const auto coarse = std::make_shared<const TriMesh>(make_initial_mesh(p, n, 2 * n));
    const Refined r = uniform_refine(*coarse);
    FeSpace x = build_space(coarse, p.x_bc, p.dirichlet);
    FeSpace y = build_space(std::make_shared<const TriMesh>(r.mesh), p.y_bc);
    Prolongation pr = build_prolongation(x, y, r.parents);
    return {std::move(x), std::move(y), std::move(pr)};
}

void BM_AssembleHeat(benchmark::State& state)
{
    const ProblemDef p = heat_smooth();
    const Nested s = nested(p, static_cast<int>(state.range(0)));
    const QuadRule q = quad_rule(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_system(p, s.trial, s.test, s.prolongation, q));
    state.SetComplexityN(s.test.num_free());
}
BENCHMARK(BM_AssembleHeat)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_FactorA(benchmark::State& state)
{
    const ProblemDef p = heat_smooth();
    const Nested s = nested(p, static_cast<int>(state.range(0)));
    const AssembledSystem sys = assemble_system(p, s.trial, s.test, s.prolongation, quad_rule(4));
    for (auto _ : state)
        benchmark::DoNotOptimize(factor_spd(sys.A));
    state.SetComplexityN(sys.num_test());
}
BENCHMARK(BM_FactorA)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_SolveSaddle(benchmark::State& state)
{
    const ProblemDef p = state.range(1) ? wave_smooth() : heat_smooth();
    const Nested s = nested(p, static_cast<int>(state.range(0)));
    const AssembledSystem sys = assemble_system(p, s.trial, s.test, s.prolongation, quad_rule(4));
    const SpdFactor f = factor_spd(sys.A);
    int iterations = 0;
    for (auto _ : state) {
        const SaddleSolution sol = solve_saddle(sys, f);
        iterations = sol.iterations;
        benchmark::DoNotOptimize(sol.u.data());
    }
    state.counters["cg_iterations"] = iterations;
}
BENCHMARK(BM_SolveSaddle)->ArgsProduct({{8, 16, 32}, {0, 1}});

} // namespace
