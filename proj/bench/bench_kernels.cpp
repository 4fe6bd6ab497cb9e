// Parallel kernels vs the serial reference, plus the transform and a full
// right-hand-side evaluation. Thread count follows SNS_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "sns/dynamics.hpp"
#include "sns/kernels.hpp"
#include "sns/parallel.hpp"
#include "sns/spectral.hpp"

namespace {

using namespace sns;
namespace k = sns::kernels;

SpectralField field(int n) {
    InitialConditionSpec ic;
    ic.kind = InitialConditionKind::random_analytic;
    ic.seed = 1;
    return make_initial_condition(ic, GridSpec(n, DealiasRule::two_thirds));
}

template <bool Parallel>
void BM_LerayProject(benchmark::State& state) {
    const SpectralField u0 = field(static_cast<int>(state.range(0)));
    SpectralField u = u0;
    for (auto _ : state) {
        if constexpr (Parallel) k::leray_project(u.grid(), k::spans(u));
        else k::serial::leray_project(u.grid(), k::spans(u));
        benchmark::DoNotOptimize(u.component(0).data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(u.grid().size()));
}

template <bool Parallel>
void BM_Curl(benchmark::State& state) {
    const SpectralField u = field(static_cast<int>(state.range(0)));
    SpectralField w(u.grid());
    for (auto _ : state) {
        if constexpr (Parallel) k::curl(u.grid(), k::views(u), k::spans(w));
        else k::serial::curl(u.grid(), k::views(u), k::spans(w));
        benchmark::DoNotOptimize(w.component(0).data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(u.grid().size()));
}

template <bool Parallel>
void BM_WeightedSum(benchmark::State& state) {
    const SpectralField u = field(static_cast<int>(state.range(0)));
    const k::Weight w{k::Weight::Kind::k_squared};
    for (auto _ : state) {
        double s = Parallel ? k::weighted_sum(u.grid(), k::views(u), w)
                            : k::serial::weighted_sum(u.grid(), k::views(u), w);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(u.grid().size()));
}

template <bool Parallel>
void BM_MaxMagnitude(benchmark::State& state) {
    const RealField r = inverse_transform(field(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        double m = Parallel ? k::max_magnitude(k::views(r)) : k::serial::max_magnitude(k::views(r));
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(r.grid().size()));
}

void BM_ForwardTransform(benchmark::State& state) {
    const RealField r = inverse_transform(field(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        SpectralField s = forward_transform(r);
        benchmark::DoNotOptimize(s.component(0).data());
    }
}

void BM_Rhs(benchmark::State& state) {
    const SpectralField u = field(static_cast<int>(state.range(0)));
    PhysicsParams p;
    p.nu = 0.01;
    const NavierStokesModel model(p, u.grid());
    for (auto _ : state) {
        SpectralField r = model.rhs(u, 0.0);
        benchmark::DoNotOptimize(r.component(0).data());
    }
}

}  // namespace

BENCHMARK(BM_LerayProject<false>)->Arg(32)->Arg(64)->Name("leray_project/serial");
BENCHMARK(BM_LerayProject<true>)->Arg(32)->Arg(64)->Name("leray_project/parallel");
BENCHMARK(BM_Curl<false>)->Arg(32)->Arg(64)->Name("curl/serial");
BENCHMARK(BM_Curl<true>)->Arg(32)->Arg(64)->Name("curl/parallel");
BENCHMARK(BM_WeightedSum<false>)->Arg(32)->Arg(64)->Name("weighted_sum/serial");
BENCHMARK(BM_WeightedSum<true>)->Arg(32)->Arg(64)->Name("weighted_sum/parallel");
BENCHMARK(BM_MaxMagnitude<false>)->Arg(32)->Arg(64)->Name("max_magnitude/serial");
BENCHMARK(BM_MaxMagnitude<true>)->Arg(32)->Arg(64)->Name("max_magnitude/parallel");
BENCHMARK(BM_ForwardTransform)->Arg(32)->Arg(64);
BENCHMARK(BM_Rhs)->Arg(32)->Arg(64);

int main(int argc, char** argv) {
    sns::parallel::configure_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
