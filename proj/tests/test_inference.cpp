#include <gtest/gtest.h>

#include <cmath>

#include "dialogfst/error.hpp"
#include "dialogfst/inference.hpp"
#include "dialogfst/learn.hpp"
#include "support/dot_parser.hpp"
#include "support/synthetic.hpp"

using namespace dialogfst;

namespace {

Fst alternator(double lambda = 0.0) {
  TrainConfig c;
  c.target_states = 2;
  c.min_child_support = 1;
  c.min_entropy_gain = 0;
  c.smoothing_lambda = lambda;
  return train_fst(synth::alternator(3, 10), synth::letters(2), c);
}

Fst with_pdf(std::vector<Count> counts, std::vector<std::string> names) {
  std::vector<StateId> delta(counts.size(), 0);
  return Fst::from_parts(Alphabet(names), 1, 0, 0.0, delta, counts, {std::nullopt});
}

}  // namespace

TEST(Step, Examples) {
  const Fst one(synth::letters(3), 0.1);
  EXPECT_EQ(step(one, 0, 2), 0u);
  const Fst alt = alternator();
  EXPECT_EQ(step(alt, 0, 0), 1u);
  EXPECT_THROW(step(alt, 0, 9), FstError);
  EXPECT_THROW(step(alt, 5, 0), FstError);
}

TEST(Traverse, Examples) {
  const Fst alt = alternator();
  const Trace empty = traverse(alt, Sequence{});
  EXPECT_EQ(empty.states, std::vector<StateId>{0});
  EXPECT_EQ(empty.embeddings.front(), emission_pdf(alt, 0));
  const Trace ab = traverse(alt, Sequence{0, 1});
  EXPECT_EQ(ab.states, (std::vector<StateId>{0, 1, 0}));
  EXPECT_EQ(final_state(alt, Sequence{0, 1, 0}), 1u);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    Sequence s(uniform_below(rng, 20), 1);
    EXPECT_EQ(traverse(alt, s).states.size(), s.size() + 1);
  }
  EXPECT_THROW(traverse(alt, Sequence{0, 3}), FstError);
}

TEST(PredictNext, UniformTiesOrderedById) {
  const Fst one(synth::letters(4), 1.0);
  const auto p = predict_next(one, 0);
  ASSERT_EQ(p.ranked.size(), 4u);
  for (SymbolId x = 0; x < 4; ++x) EXPECT_EQ(p.ranked[x].first, x);
}

TEST(PredictNext, MaskRenormalizes) {
  const Fst f = with_pdf({6, 3, 1}, {"a", "b", "c"});
  const auto p = predict_next(f, 0, std::vector<SymbolId>{1, 2});
  ASSERT_EQ(p.ranked.size(), 2u);
  EXPECT_EQ(p.ranked[0].first, 1u);
  EXPECT_DOUBLE_EQ(p.ranked[0].second, 0.75);
  EXPECT_DOUBLE_EQ(p.ranked[1].second, 0.25);
  EXPECT_THROW(predict_next(f, 0, std::vector<SymbolId>{}), FstError);
}

TEST(PredictNext, RoleMask) {
  std::vector<std::string> names;
  for (auto role : {"buyer", "seller"})
    for (auto act : {"intro", "init-price", "insist", "agree", "disagree", "inform", "inquire"})
      names.push_back(std::string(role) + ":" + act);
  std::vector<Count> counts = {5, 1, 1, 1, 1, 1, 1, 2, 4, 0, 0, 1, 1, 0};
  const Fst f = with_pdf(counts, names);
  std::vector<SymbolId> seller;
  for (SymbolId x = 7; x < 14; ++x) seller.push_back(x);
  const auto p = predict_next(f, 0, seller);
  ASSERT_EQ(p.ranked.size(), 7u);
  EXPECT_EQ(names[p.ranked[0].first], "seller:init-price");
  EXPECT_DOUBLE_EQ(p.ranked[0].second, 0.5);
  double total = 0;
  for (const auto& [x, prob] : p.ranked) total += prob;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(PredictNext, MaskedArgmaxScaleInvariant) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Count> c(5);
    for (auto& v : c) v = uniform_below(rng, 10);
    std::vector<Count> scaled = c;
    for (auto& v : scaled) v *= 7;
    const auto names = synth::letters(5).names();
    const std::vector<SymbolId> mask = {1, 3, 4};
    EXPECT_EQ(predict_next(with_pdf(c, names), 0, mask).top(),
              predict_next(with_pdf(scaled, names), 0, mask).top());
  }
}

TEST(Perplexity, AlternatorIsOne) {
  EXPECT_NEAR(perplexity(alternator(), synth::alternator(1, 4)), 1.0, 1e-12);
  EXPECT_NEAR(cross_entropy(alternator(), synth::alternator(5, 17)), 0.0, 1e-12);
}

TEST(Perplexity, UniformIsAlphabetSize) {
  const Fst one(synth::letters(7), 1.0);
  EXPECT_NEAR(perplexity(one, std::vector<Sequence>{{0, 3, 6, 6, 2}}), 7.0, 1e-9);
}

TEST(Perplexity, Errors) {
  EXPECT_THROW(perplexity(alternator(), std::vector<Sequence>{}), FstError);
  EXPECT_THROW(perplexity(alternator(), std::vector<Sequence>{{}}), FstError);
  // Unseen event under lambda = 0.
  EXPECT_THROW(sequence_logprob(alternator(), Sequence{1}), FstError);
}

TEST(Dot, SingleStateSelfLoops) {
  const Fst one(synth::letters(3), 1.0);
  const auto g = dot::parse(export_dot(one));
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(g.edges.size(), 3u);
  for (const auto& [a, b] : g.edges) EXPECT_EQ(a, b);
}

TEST(Dot, ThreeStatesAndDeterministic) {
  std::mt19937_64 rng(8);
  const auto corpus = synth::random_corpus(rng, 4, 1000);
  TrainConfig c;
  c.target_states = 3;
  c.min_child_support = 1;
  c.min_entropy_gain = 0;
  const Fst f = train_fst(corpus, synth::letters(4), c);
  ASSERT_EQ(f.num_states(), 3u);
  const std::string text = export_dot(f);
  EXPECT_EQ(text, export_dot(f));
  const auto g = dot::parse(text);
  EXPECT_EQ(g.nodes.size(), 3u);
  EXPECT_FALSE(g.edges.empty());
  EXPECT_THROW(export_dot(f, DotOptions{0, 0.05, "fst"}), FstError);
}
