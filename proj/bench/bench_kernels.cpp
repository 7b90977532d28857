// Serial reference kernels against their OpenMP counterparts on a corpus
// shaped like the negotiation data.
#include <benchmark/benchmark.h>

#include "dialogfst/annotator.hpp"
#include "dialogfst/learn.hpp"
#include "support/synthetic.hpp"

using namespace dialogfst;

namespace {

const std::vector<Sequence>& corpus() {
  static const auto c = synth::bargaining_shaped(3, 5383);
  return c;
}

const Alphabet& acts() {
  static const Alphabet a(act_symbol_inventory(Schema::kNegotiation));
  return a;
}

// Automaton with range(0) states, as grown by the learner.
Fst grown(std::size_t states) {
  TrainConfig c;
  c.target_states = states;
  c.min_child_support = 1;
  c.min_entropy_gain = 0;
  return train_fst(corpus(), acts(), c);
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::kParallel : Exec::kSerial; }

void BM_EdgeTable(benchmark::State& state) {
  const Fst f = grown(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_edge_table(f, corpus(), exec_of(state)));
}

void BM_Counts(benchmark::State& state) {
  Fst f = grown(state.range(0));
  for (auto _ : state) {
    run_counts(f, corpus(), exec_of(state));
    benchmark::ClobberMemory();
  }
}

void BM_Score(benchmark::State& state) {
  const Fst f = grown(state.range(0));
  const EdgeTable table = accumulate_edge_table(f, corpus(), Exec::kSerial);
  TrainConfig c;
  c.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(score_candidates(f, table, c));
}

void BM_Train(benchmark::State& state) {
  TrainConfig c;
  c.target_states = state.range(0);
  c.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(train_fst(corpus(), acts(), c));
}

void args(benchmark::internal::Benchmark* b) {
  for (int k : {3, 20, 50})
    for (int par : {0, 1}) b->Args({k, par});
  b->ArgNames({"K", "parallel"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_EdgeTable)->Apply(args);
BENCHMARK(BM_Counts)->Apply(args);
BENCHMARK(BM_Score)->Apply(args);
BENCHMARK(BM_Train)->Apply(args);

BENCHMARK_MAIN();
