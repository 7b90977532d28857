// Sanity checks on the brute-force oracles themselves, then agreement with
// the library on a handful of seeds (the acceptance suite runs many more).
#include <gtest/gtest.h>

#include "dialogfst/eval.hpp"
#include "dialogfst/learn.hpp"
#include "oracle/brute_eval.hpp"
#include "oracle/brute_split.hpp"
#include "support/synthetic.hpp"

using namespace dialogfst;

namespace {

TrainConfig loose(SplitScope scope) {
  TrainConfig c;
  c.min_child_support = 1;
  c.min_entropy_gain = 0;
  c.scope = scope;
  return c;
}

}  // namespace

TEST(Oracle, AlternatorByHand) {
  const auto corpus = synth::alternator(2, 8);
  Fst f(synth::letters(2), 0.0);
  run_counts(f, corpus);
  const auto all = oracle::enumerate(f, corpus, loose(SplitScope::kSymbol));
  // Splitting on a separates "after a" (always b) from start and "after b"
  // (always a). Splitting on b leaves start and "after a" mixed: {a:2, b:8}
  // over 16 emissions.
  ASSERT_EQ(all.size(), 2u);
  EXPECT_NEAR(all[0].weighted_entropy, 0.0, 1e-12);
  EXPECT_NEAR(all[0].gain, 1.0, 1e-12);
  const double h_rest = -0.2 * std::log2(0.2) - 0.8 * std::log2(0.8);
  EXPECT_NEAR(all[1].weighted_entropy, 10.0 / 16.0 * h_rest, 1e-12);
  const auto best = oracle::brute_best_split(f, corpus, loose(SplitScope::kSymbol));
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->symbol, 0u);
}

TEST(Oracle, HandComputedEntropy) {
  // Single sequence a b a a b: state 0 emits {a:3, b:2}.
  // Split on a: child (after a) emits {b, a, b}; rest (start, after b) emits {a, a}.
  const std::vector<Sequence> corpus = {{0, 1, 0, 0, 1}};
  Fst f(synth::letters(2), 0.0);
  run_counts(f, corpus);
  const auto all = oracle::enumerate(f, corpus, loose(SplitScope::kSymbol));
  const double h_child = -(1.0 / 3) * std::log2(1.0 / 3) - (2.0 / 3) * std::log2(2.0 / 3);
  bool seen = false;
  for (const auto& c : all)
    if (c.symbol == 0) {
      seen = true;
      EXPECT_NEAR(c.weighted_entropy, 3.0 / 5 * h_child, 1e-12);
      EXPECT_EQ(c.child_support, 3u);
      EXPECT_EQ(c.rest_support, 2u);
    }
  EXPECT_TRUE(seen);
}

TEST(Oracle, AgreesWithLibraryOnSeeds) {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    std::mt19937_64 rng(seed);
    const auto corpus = synth::random_corpus(rng, 4, 200);
    for (auto scope : {SplitScope::kSymbol, SplitScope::kEdge}) {
      auto c = loose(scope);
      c.target_states = 1 + seed % 5;
      const Fst f = train_fst(corpus, synth::letters(4), c);
      const auto lib = best_split(f, corpus, c);
      const auto ref = oracle::brute_best_split(f, corpus, c);
      ASSERT_EQ(lib.has_value(), ref.has_value()) << seed;
      if (!lib) continue;
      EXPECT_EQ(lib->target_state, ref->state);
      EXPECT_EQ(lib->incoming_symbol, ref->symbol);
      EXPECT_EQ(lib->source_state, ref->source);
      EXPECT_NEAR(lib->weighted_child_entropy, ref->weighted_entropy, 1e-9);
    }
  }
}

TEST(Oracle, NgramAccuracyMatchesBaselines) {
  const auto train = synth::second_order(3, 4, 60, 40, 0.7);
  const auto test = synth::second_order(4, 4, 20, 40, 0.7);
  const auto ab = synth::letters(4);
  EXPECT_DOUBLE_EQ(next_symbol_accuracy(baseline_predictor(BaselineKind::kUnigram, ab, train, 0.1), test),
                   oracle::brute_ngram_accuracy(0, 4, train, test));
  EXPECT_DOUBLE_EQ(next_symbol_accuracy(baseline_predictor(BaselineKind::kMarkov1, ab, train, 0.1), test),
                   oracle::brute_ngram_accuracy(1, 4, train, test));
}
