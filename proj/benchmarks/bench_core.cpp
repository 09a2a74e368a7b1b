#include "topophase/fd.hpp"
#include "topophase/field.hpp"
#include "topophase/path.hpp"
#include "topophase/phase.hpp"
#include "topophase/relkit.hpp"
#include "topophase/scenario.hpp"
#include "topophase/topocheck.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace {

using namespace topophase;

std::vector<Vec3> circle(int n, double radius) {
    std::vector<Vec3> pts;
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * std::numbers::pi * k / n;
        pts.push_back({radius * std::cos(th), radius * std::sin(th), 0});
    }
    return pts;
}

Scenario wire() {
    Scenario s;
    s.particle.alpha = 1e-3;
    s.e_components.push_back(catalog_field("line_charge_E", {{"lambda", 2.0}}));
    s.b_components.push_back(catalog_field("uniform", {{"strength", 3.0}}));
    s.paths.emplace_back("loop", circle(512, 1.0), true, 0.01);
    s.excluded_region = Region::cylinder({0, 0, 0}, {0, 0, 1}, 0.05);
    return s;
}

void BM_CatalogFieldEval(benchmark::State& state) {
    VectorField line = catalog_field("line_charge_E", {{"lambda", 2.0}});
    Vec3 x{1.0, 0.3, -0.2};
    for (auto _ : state) benchmark::DoNotOptimize(line(x));
}
BENCHMARK(BM_CatalogFieldEval);

void BM_FdCurl(benchmark::State& state) {
    VectorField line = catalog_field("line_charge_E", {{"lambda", 2.0}});
    FDParams p{0.0, static_cast<int>(state.range(0))};
    Vec3 x{1.0, 0.3, -0.2};
    for (auto _ : state) benchmark::DoNotOptimize(fd_curl(line, x, p));
}
BENCHMARK(BM_FdCurl)->Arg(2)->Arg(4);

void BM_PathPosition(benchmark::State& state) {
    Path loop("loop", circle(512, 1.0), true, 0.01);
    double u = 0.0;
    for (auto _ : state) {
        u += 0.001;
        if (u > 1.0) u -= 1.0;
        benchmark::DoNotOptimize(loop.position(u));
    }
}
BENCHMARK(BM_PathPosition);

void BM_LoopPhase(benchmark::State& state) {
    Scenario s = wire();
    auto T = phase_vector_field(s);
    for (auto _ : state) benchmark::DoNotOptimize(line_phase(T, s.paths[0], 1e-9).value);
}
BENCHMARK(BM_LoopPhase);

void BM_RelLagrangian(benchmark::State& state) {
    Kinematics k({0.3, 0.2, 0.1});
    for (auto _ : state)
        benchmark::DoNotOptimize(rel_lagrangian({1, 0.5, 0.2}, {0.1, 0.9, 0.4}, k, 0.7));
}
BENCHMARK(BM_RelLagrangian);

void BM_Classify(benchmark::State& state) {
    Scenario s = wire();
    for (auto _ : state) benchmark::DoNotOptimize(classify(s).classification);
}
BENCHMARK(BM_Classify);

} // namespace

BENCHMARK_MAIN();
