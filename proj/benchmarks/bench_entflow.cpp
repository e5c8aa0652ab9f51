#include "entflow/events.hpp"
#include "entflow/lindblad.hpp"
#include "entflow/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace entflow;

namespace {

void BM_AmplitudesExact(benchmark::State& state) {
    const SystemParams p = SystemParams::from_effective(5.0, 1.0);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(amplitudes_exact(t, p));
        t = t < 10.0 ? t + 1e-3 : 0.0;
    }
}
BENCHMARK(BM_AmplitudesExact);

void BM_PairConcurrence(benchmark::State& state) {
    const SystemParams p = SystemParams::from_effective(0.1, 1.0);
    const InitialAmplitudes init = InitialAmplitudes::from_ratio(3.0);
    const JointPureState psi = joint_state(15.0, init, p);
    for (auto _ : state) benchmark::DoNotOptimize(pair_concurrence(psi, PairLabel::a1c2));
}
BENCHMARK(BM_PairConcurrence);

void BM_ConcurrenceClosed(benchmark::State& state) {
    const AmplitudeTriple amps = amplitudes_exact(2.0, SystemParams::from_effective(5.0, 1.0));
    const InitialAmplitudes init = InitialAmplitudes::from_ratio(1.5);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence_closed(PairLabel::c1c2, amps, init));
}
BENCHMARK(BM_ConcurrenceClosed);

void BM_DetectEvents(benchmark::State& state) {
    const SystemParams p = SystemParams::from_effective(5.0, 1.0);
    const InitialAmplitudes init = InitialAmplitudes::from_ratio(1.5);
    for (auto _ : state) benchmark::DoNotOptimize(detect_events(PairLabel::a1a2, init, p, 10.0));
}
BENCHMARK(BM_DetectEvents)->Unit(benchmark::kMillisecond);

void BM_OracleEigensolve(benchmark::State& state) {
    const SystemParams p(std::sqrt(1e5), std::sqrt(1e5), 2e4, 1.0);
    const int n = static_cast<int>(state.range(0));
    const Eigen::MatrixXd h = build_hamiltonian(p, ReservoirDiscretization(n, 0.25 * n, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(Propagator(h).eigenvalues());
}
BENCHMARK(BM_OracleEigensolve)->Arg(480)->Arg(960)->Arg(1920)->Unit(benchmark::kMillisecond);

void BM_LindbladEvolve(benchmark::State& state) {
    const SystemParams p(50.0, 50.0, 500.0, 1.0);
    const std::vector<double> grid = uniform_grid(10.0, 200);
    for (auto _ : state) benchmark::DoNotOptimize(lindblad_evolve(p, grid));
}
BENCHMARK(BM_LindbladEvolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
