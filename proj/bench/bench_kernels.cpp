#include <benchmark/benchmark.h>

#include <vector>

#include "qdot/geometry.hpp"
#include "qdot/kernels.hpp"
#include "qdot/parallel.hpp"

namespace {

const qdot::BoundaryCurve& ellipse() {
  static const qdot::BoundaryCurve c = qdot::BoundaryCurve::ellipse(2.0 * 1.4142135623730951, 1.4142135623730951);
  return c;
}

const qdot::MpsSetup& setup() {
  static const qdot::MpsSetup s = qdot::make_mps_setup(ellipse(), 20, 256, 12345);
  return s;
}

std::vector<double> mus() {
  std::vector<double> v(32);
  for (int i = 0; i < 32; ++i) v[i] = 0.2 + 0.05 * i;
  return v;
}

void BM_SigmaScanSerial(benchmark::State& st) {
  const auto grid = mus();
  for (auto _ : st)
    benchmark::DoNotOptimize(qdot::sigma_scan_serial(setup(), qdot::BoundaryKind::robin, 1.0, grid));
}

void BM_SigmaScanParallel(benchmark::State& st) {
  const auto grid = mus();
  for (auto _ : st)
    benchmark::DoNotOptimize(qdot::sigma_scan_parallel(setup(), qdot::BoundaryKind::robin, 1.0, grid));
}

void BM_GramSerial(benchmark::State& st) {
  const auto g = qdot::build_grid(ellipse(), 1024);
  for (auto _ : st)
    benchmark::DoNotOptimize(qdot::gram_serial(g, {}, 2.0 * 1.4142135623730951, static_cast<int>(st.range(0))));
}

void BM_GramParallel(benchmark::State& st) {
  const auto g = qdot::build_grid(ellipse(), 1024);
  for (auto _ : st)
    benchmark::DoNotOptimize(qdot::gram_parallel(g, {}, 2.0 * 1.4142135623730951, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_SigmaScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramSerial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_threads", std::to_string(qdot::thread_count()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
