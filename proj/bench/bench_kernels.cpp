#include <benchmark/benchmark.h>

#include <cmath>
#include <functional>

#include "localcast/channel.hpp"
#include "localcast/generate.hpp"
#include "localcast/rng.hpp"
#include "localcast/trials.hpp"
#include "localcast/verify.hpp"

using namespace localcast;

namespace {

struct SlotFixture {
  Scenario s;
  std::vector<NodeIndex> awake, tx;

  explicit SlotFixture(std::size_t n)
      : s(generate_scenario([n] {
          GenSpec g;
          g.n = n;
          g.side = std::sqrt(static_cast<double>(n) / 2.0);
          g.seed = 11;
          return g;
        }())) {
    for (NodeIndex i = 0; i < s.size(); ++i) {
      awake.push_back(i);
      if (rng::uniform(3, i, 0) < 0.05) tx.push_back(i);
    }
  }
};

void BM_resolve_slot(benchmark::State& state) {
  const SlotFixture f(static_cast<std::size_t>(state.range(0)));
  SlotOutcome out;
  for (auto _ : state) {
    resolve_slot(f.s, 0, f.awake, f.tx, out);
    benchmark::DoNotOptimize(out.decodes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_resolve_slot_reference(benchmark::State& state) {
  const SlotFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = reference::resolve_slot(f.s, 0, f.awake, f.tx);
    benchmark::DoNotOptimize(out.decodes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<verify::CorpusJob> jobs(std::size_t count) {
  std::vector<verify::CorpusJob> v(count);
  for (std::size_t k = 0; k < count; ++k) {
    v[k].gen.n = 64;
    v[k].gen.side = 5.0;
    v[k].gen.seed = k;
    v[k].seed = k;
    v[k].variant = k % 2 ? Variant::Alg2 : Variant::Alg1;
  }
  return v;
}

void BM_scan_corpus(benchmark::State& state) {
  const auto v = jobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify::scan_corpus(v, {false, true, false}).slots);
}

void BM_scan_corpus_serial(benchmark::State& state) {
  const auto v = jobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify::serial::scan_corpus(v, {false, true, false}).slots);
}

const std::function<std::uint64_t(std::size_t)> spin = [](std::size_t i) {
  std::uint64_t h = i;
  for (int k = 0; k < 20000; ++k) h = rng::splitmix64(h);
  return h;
};

void BM_run_trials(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_trials<std::uint64_t>(state.range(0), spin));
}

void BM_run_trials_serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(serial::run_trials<std::uint64_t>(state.range(0), spin));
}

}  // namespace

BENCHMARK(BM_resolve_slot)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_resolve_slot_reference)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_scan_corpus)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_corpus_serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_run_trials)->Arg(256);
BENCHMARK(BM_run_trials_serial)->Arg(256);

BENCHMARK_MAIN();
