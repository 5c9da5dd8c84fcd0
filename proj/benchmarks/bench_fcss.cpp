#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "fcss/code.hpp"
#include "fcss/complex.hpp"
#include "fcss/distance.hpp"
#include "fcss/gates.hpp"

using namespace fcss;

namespace {

std::shared_ptr<const CellComplex> fc31(int level) {
    FractalSpec f;
    f.level = level;
    f.cellulation = Cellulation::Adapted;
    return std::make_shared<const CellComplex>(build_fractal(f));
}

void BM_Rank(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    std::mt19937_64 rng(7);
    Gf2Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng() & 1U) m.set(r, c);
    for (auto _ : st) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(256)->Arg(1024)->Arg(2048);

void BM_BuildFractal(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(fc31(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_BuildFractal)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_DzShortestPath(benchmark::State& st) {
    const CssCode c = css_from_complex(fc31(static_cast<int>(st.range(0))), 1);
    for (auto _ : st) benchmark::DoNotOptimize(dz_shortest_path(c).value);
}
BENCHMARK(BM_DzShortestPath)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_DxMinCut(benchmark::State& st) {
    const CssCode c = css_from_complex(fc31(static_cast<int>(st.range(0))), 1);
    for (auto _ : st) benchmark::DoNotOptimize(dx_min_cut(c).value);
}
BENCHMARK(BM_DxMinCut)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CczCheck(benchmark::State& st) {
    const VasmerBrowneStack s = build_vasmer_browne_stack(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(check_transversal_ccz(s.codes[0], s.codes[1], s.codes[2], s.align).passed());
}
BENCHMARK(BM_CczCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
