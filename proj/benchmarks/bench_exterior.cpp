#include <benchmark/benchmark.h>

#include <random>

#include "g2strom/g2.hpp"
#include "g2strom/symbols.hpp"

using namespace g2strom;

namespace {

AlternatingForm random_form(std::mt19937_64& gen, int dim, int deg) {
    std::normal_distribution<double> N(0.0, 1.0);
    AlternatingForm f(dim, deg);
    for (int i = 0; i < f.size(); ++i) f[i] = N(gen);
    return f;
}

void BM_Wedge3x4(benchmark::State& state) {
    std::mt19937_64 gen(1);
    const AlternatingForm a = random_form(gen, 7, 3);
    const AlternatingForm b = random_form(gen, 7, 4);
    for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(BM_Wedge3x4);

void BM_HodgeStar3(benchmark::State& state) {
    std::mt19937_64 gen(2);
    const AlternatingForm a = random_form(gen, 7, 3);
    const MetricData m = euclidean_metric(7);
    for (auto _ : state) benchmark::DoNotOptimize(hodge_star(a, m));
}
BENCHMARK(BM_HodgeStar3);

void BM_MetricFromPhi(benchmark::State& state) {
    const AlternatingForm p = phi0();
    for (auto _ : state) benchmark::DoNotOptimize(metric_from_positive3form(p));
}
BENCHMARK(BM_MetricFromPhi);

void BM_G2PointConstruction(benchmark::State& state) {
    const AlternatingForm p = phi0();
    for (auto _ : state) benchmark::DoNotOptimize(G2Point(p));
}
BENCHMARK(BM_G2PointConstruction);

void BM_SymbolExactness(benchmark::State& state) {
    const G2Point p(phi0());
    std::mt19937_64 gen(3);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::VectorXd v(7);
    for (int i = 0; i < 7; ++i) v[i] = N(gen);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_exactness(symbol_PM(p, v), symbol_LM(p, v)));
}
BENCHMARK(BM_SymbolExactness);

}  // namespace
