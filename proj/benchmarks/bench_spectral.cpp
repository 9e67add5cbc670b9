#include <benchmark/benchmark.h>

#include "aqg/ensemble.hpp"
#include "aqg/evolve.hpp"
#include "aqg/lemmas.hpp"
#include "aqg/norms.hpp"
#include "aqg/picard.hpp"
#include "aqg/spectral_ops.hpp"

namespace {

aqg::SpectralField sample(int n, double norm = 1.0) {
    const aqg::GridSpec grid{n, n};
    const aqg::FieldEnsembleSpec spec{17, 1, grid.dealias_kmax(), 1.5};
    auto f = aqg::random_band_limited_field(spec, grid, 0);
    return (norm / aqg::sobolev_norm(f, 1.0)) * f;
}

void BM_NonlinearTerm(benchmark::State& state) {
    const auto theta = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqg::nonlinear_term(theta));
    }
}
BENCHMARK(BM_NonlinearTerm)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

/// Fixed horizon of 0.01 on the global clock, so the step count is set by the controller.
void BM_Evolve(benchmark::State& state) {
    const auto theta = sample(static_cast<int>(state.range(0)));
    const aqg::DissipParams p{0.75, 0.8, 1.0, 1.0, 1.0};
    std::size_t steps = 0;
    for (auto _ : state) {
        const auto r = aqg::evolve(theta, 0.01, p);
        steps += r.accepted_steps;
        benchmark::DoNotOptimize(r.final_state);
    }
    state.counters["steps"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Evolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Picard(benchmark::State& state) {
    const auto theta = sample(32);
    const aqg::DissipParams p{0.75, 0.8, 1.0, 1.0, 1.0};
    aqg::PicardConfig cfg;
    cfg.T = 1e-3;
    cfg.n_nodes = static_cast<std::size_t>(state.range(0));
    cfg.allow_outside_ball = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqg::picard_solve(theta, cfg, p, {}));
    }
}
BENCHMARK(BM_Picard)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ScalarSuite(benchmark::State& state) {
    const aqg::DissipParams p{0.75, 0.8, 1.0, 1.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqg::scalar_inequality_suite(p));
    }
}
BENCHMARK(BM_ScalarSuite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
