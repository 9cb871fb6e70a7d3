#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include <lsfem/mesh.hpp>
#include <lsfem/space.hpp>

using namespace lsfem;

namespace {

TriMesh grid(int n) { return make_rect_mesh({0, 1}, {0, 1}, n, n); }

void BM_UniformRefine(benchmark::State& state)
{
    const TriMesh m = grid(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(uniform_refine(m));
    state.SetComplexityN(static_cast<long>(m.num_triangles()));
}
BENCHMARK(BM_UniformRefine)->RangeMultiplier(2)->Range(16, 256)->Complexity();

// every third triangle marked; closure spreads the refinement further
void BM_BisectWithClosure(benchmark::State& state)
{
    const TriMesh m = grid(static_cast<int>(state.range(0)));
    std::vector<int> marked;
    for (int t = 0; t < static_cast<int>(m.num_triangles()); t += 3)
        marked.push_back(t);
    for (auto _ : state)
        benchmark::DoNotOptimize(bisect(m, marked));
    state.SetComplexityN(static_cast<long>(m.num_triangles()));
}
BENCHMARK(BM_BisectWithClosure)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_Prolongation(benchmark::State& state)
{
    const auto coarse = std::make_shared<const TriMesh>(grid(static_cast<int>(state.range(0))));
    const Refined r = uniform_refine(*coarse);
    const FeSpace x = build_space(coarse, {});
    const FeSpace y = build_space(std::make_shared<const TriMesh>(r.mesh), {});
    for (auto _ : state)
        benchmark::DoNotOptimize(build_prolongation(x, y, r.parents));
}
BENCHMARK(BM_Prolongation)->RangeMultiplier(2)->Range(16, 256);

} // namespace
