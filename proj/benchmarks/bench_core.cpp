#include <benchmark/benchmark.h>

#include <cmath>

#include "colombeau/classify.hpp"
#include "colombeau/embedding.hpp"
#include "colombeau/geometry.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/suppleness.hpp"

using namespace colombeau;

namespace {

void BM_BumpValue(benchmark::State& state) {
    const auto& b = mollifier::standard_bump();
    double x = -0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(b.value(x));
        x += 1e-6;
        if (x > 0.9) x = -0.9;
    }
}
BENCHMARK(BM_BumpValue);

void BM_BumpDerivative6(benchmark::State& state) {
    const auto& b = mollifier::standard_bump();
    double x = -0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(b.derivative(x, 6));
        x += 1e-6;
        if (x > 0.9) x = -0.9;
    }
}
BENCHMARK(BM_BumpDerivative6);

void BM_BumpCdf(benchmark::State& state) {
    const auto& b = mollifier::standard_bump();
    double x = -0.999;
    for (auto _ : state) {
        benchmark::DoNotOptimize(b.cdf(x));
        x += 1e-6;
        if (x > 0.999) x = -0.999;
    }
}
BENCHMARK(BM_BumpCdf);

void BM_SmoothIndicatorEval(benchmark::State& state) {
    nets::Net eta = mollifier::smooth_indicator(
        mollifier::standard_bump(), {{-1.0, -0.2}, {0.1, 0.9}}, mollifier::linear_width());
    double x = -1.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eta(0.125, x, 0));
        x += 1e-4;
        if (x > 1.5) x = -1.5;
    }
}
BENCHMARK(BM_SmoothIndicatorEval);

void BM_FamilyDistance(benchmark::State& state) {
    geometry::ClosedSet fam;
    fam.add_family(1.0, +1);
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fam.distance(x));
        x += 1e-5;
        if (x > 2.0) x = -2.0;
    }
}
BENCHMARK(BM_FamilyDistance);

void BM_Example2Eval(benchmark::State& state) {
    nets::Net f = embedding::example2_net(embedding::Example2Family{},
                                          mollifier::standard_bump());
    const double eps = std::pow(2.0, -static_cast<double>(state.range(0)));
    double x = -4.0 * eps;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f(eps, x, 0));
        x += eps / 16.0;
        if (x > 4.0 * eps) x = -4.0 * eps;
    }
}
BENCHMARK(BM_Example2Eval)->Arg(6)->Arg(12)->Arg(20);

void BM_SupOnCompact(benchmark::State& state) {
    nets::Net phi = mollifier::scaled(mollifier::standard_bump());
    const double eps = std::pow(2.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            nets::sup_on_compact(phi, CompactBox(-1.0, 1.0), eps, 0));
    }
}
BENCHMARK(BM_SupOnCompact)->Arg(6)->Arg(20);

void BM_FitOrder(benchmark::State& state) {
    nets::Net phi = mollifier::scaled(mollifier::standard_bump());
    EpsSchedule sched = EpsSchedule::geometric(3, 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            nets::fit_order(phi, CompactBox(-1.0, 1.0), 0, sched));
    }
}
BENCHMARK(BM_FitOrder);

void BM_TildeSet(benchmark::State& state) {
    geometry::ClosedSet z1, z2;
    z1.add_family(1.0, +1);
    z2.add_family(1.0, -1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            geometry::tilde_set(z1, z2, 0.1, CompactBox(-2.0, 2.0)));
    }
}
BENCHMARK(BM_TildeSet);

void BM_Decompose(benchmark::State& state) {
    geometry::ClosedSet z1, z2;
    z1.add_family(1.0, +1);
    z2.add_family(1.0, -1);
    nets::Net f = embedding::example2_net(embedding::Example2Family{},
                                          mollifier::standard_bump());
    for (auto _ : state) {
        auto res = suppleness::decompose(f, z1, z2, 0.1, CompactBox(-2.0, 2.0));
        benchmark::DoNotOptimize(res.f1(0.01, 0.3, 0));
    }
}
BENCHMARK(BM_Decompose);

}  // namespace

BENCHMARK_MAIN();
