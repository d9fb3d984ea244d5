// Likelihood evaluation: serial per-tuple reference vs the cached OpenMP
// kernel at 1 thread and at all threads.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "vinemeta/kernel.hpp"
#include "vinemeta/reference.hpp"
#include "vinemeta/simulate.hpp"

using namespace vinemeta;

namespace {

const std::vector<StudyTable>& data() {
  static const auto d = generate_dataset(SimDesign::defaults(), 0);
  return d;
}

ModelParams truth() { return SimDesign::defaults().truth; }

// Moves one level-1 parameter per call so the kernel cannot serve the whole
// evaluation from its caches.
ModelParams perturbed(std::size_t i) {
  auto p = truth();
  p.vine.level1[1].theta *= 1.0 + 1e-3 * static_cast<double>(i % 7);
  return p;
}

void BM_Reference(benchmark::State& state) {
  const auto nq = static_cast<std::size_t>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reference::loglik_quad(data(), perturbed(i++), MarginKind::Beta, nq));
}

void kernel(benchmark::State& state, int threads, bool vine_change) {
  const auto nq = static_cast<std::size_t>(state.range(0));
  set_thread_count(threads);
  QuadLikelihood q(data(), MarginKind::Beta, nq);
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = vine_change ? perturbed(i) : truth();
    if (!vine_change) p.pi[0] = 0.9 - 1e-4 * static_cast<double>(i % 7);
    ++i;
    benchmark::DoNotOptimize(q.loglik(p));
  }
  set_thread_count(0);
}

void BM_KernelSerial(benchmark::State& state) { kernel(state, 1, true); }
void BM_KernelParallel(benchmark::State& state) { kernel(state, omp_get_num_procs(), true); }
void BM_KernelSerialMarginOnly(benchmark::State& state) { kernel(state, 1, false); }
void BM_KernelParallelMarginOnly(benchmark::State& state) { kernel(state, omp_get_num_procs(), false); }

}  // namespace

BENCHMARK(BM_Reference)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSerial)->Arg(7)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelParallel)->Arg(7)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSerialMarginOnly)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelParallelMarginOnly)->Arg(15)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
