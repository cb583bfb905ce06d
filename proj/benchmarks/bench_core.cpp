#include <benchmark/benchmark.h>

#include <vector>

#include "mlsspf/formative.hpp"
#include "mlsspf/solver.hpp"

using namespace mlsspf;

namespace {

HfSet nat(unsigned n) {
  HfSet s;
  for (unsigned i = 0; i < n; ++i) s = s.with(s);
  return s;
}

std::vector<HfSet> blocks(unsigned count, unsigned width) {
  std::vector<HfSet> out;
  unsigned next = 0;
  for (unsigned b = 0; b < count; ++b) {
    std::vector<HfSet> z;
    for (unsigned i = 0; i < width; ++i) z.push_back(nat(next++));
    out.push_back(HfSet::make(z));
  }
  return out;
}

const Formula& simple() {
  static const Formula phi = parse("w in x & !Finite(x)");
  return phi;
}

}  // namespace

static void BM_PowStar(benchmark::State& state) {
  const auto fam = blocks(static_cast<unsigned>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(pow_star(fam));
}
BENCHMARK(BM_PowStar)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

static void BM_VennPartition(benchmark::State& state) {
  Assignment m;
  for (unsigned i = 0; i < 4; ++i) m["v" + std::to_string(i)] = blocks(1, 2 + i)[0];
  for (auto _ : state) benchmark::DoNotOptimize(venn_partition(m));
}
BENCHMARK(BM_VennPartition);

static void BM_SynthesizeProcess(benchmark::State& state) {
  const HfSet u = nat(static_cast<unsigned>(state.range(0)));
  std::vector<HfSet> singletons;
  for (const auto& e : u.elements()) singletons.push_back(HfSet::make({e}));
  const Partition sigma(std::move(singletons));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_process(sigma));
}
BENCHMARK(BM_SynthesizeProcess)->Arg(4)->Arg(8)->Arg(16);

static void BM_CertifySimple(benchmark::State& state) {
  const HfSet a, b = a.with(a), c = HfSet{}.with(b);
  const Assignment m{{"w", b}, {"x", HfSet::make({b, c})}};
  for (auto _ : state) benchmark::DoNotOptimize(certify_witness(simple(), m));
}
BENCHMARK(BM_CertifySimple);

static void BM_DecideSimple(benchmark::State& state) {
  SearchBudget budget;
  for (auto _ : state) benchmark::DoNotOptimize(decide(simple(), budget));
}
BENCHMARK(BM_DecideSimple)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
