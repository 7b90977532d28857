#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "dialogfst/corpus.hpp"
#include "dialogfst/error.hpp"

using namespace dialogfst;

namespace {

std::string line(const std::string& id, const std::string& turns,
                 const std::string& scenario_extra = "") {
  return R"({"dialog_id":")" + id +
         R"(","scenario":{"title":"Bike","description":"A bike","listing_price":100)" +
         scenario_extra + R"(},"turns":[)" + turns + "]}\n";
}

const std::string kTwoTurns =
    R"({"role":"buyer","text":"Hello!"},{"role":"seller","text":"Hi"})";

std::vector<Dialog> make_dialogs(std::size_t n) {
  std::vector<Dialog> out;
  for (std::size_t i = 0; i < n; ++i) {
    Dialog d;
    d.dialog_id = "d" + std::to_string(i);
    d.scenario.listing_price = 10;
    d.turns.push_back({"buyer", "hi", std::nullopt, std::nullopt});
    out.push_back(d);
  }
  return out;
}

}  // namespace

TEST(LoadCorpus, EmptyStream) {
  std::istringstream in("");
  EXPECT_TRUE(load_corpus(in, Schema::kNegotiation).empty());
}

TEST(LoadCorpus, OneDialogTwoTurns) {
  std::istringstream in(line("a", kTwoTurns));
  const auto ds = load_corpus(in, Schema::kNegotiation);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].dialog_id, "a");
  ASSERT_EQ(ds[0].turns.size(), 2u);
  EXPECT_EQ(ds[0].turns[1].role, "seller");
  EXPECT_FALSE(ds[0].turns[0].gold_acts.has_value());
}

TEST(LoadCorpus, BlankLinesSkipped) {
  std::istringstream in("\n" + line("a", kTwoTurns) + "\n\n" + line("b", kTwoTurns));
  EXPECT_EQ(load_corpus(in, Schema::kNegotiation).size(), 2u);
}

TEST(LoadCorpus, UnknownRoleCitesDialog) {
  std::istringstream in(line("x42", R"({"role":"moderator","text":"ok"})"));
  try {
    load_corpus(in, Schema::kNegotiation);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("x42"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("moderator"), std::string::npos);
  }
}

TEST(LoadCorpus, PersuasionRoles) {
  std::istringstream ok(line("p", R"({"role":"persuader","text":"Would you donate?"})"));
  EXPECT_EQ(load_corpus(ok, Schema::kPersuasion).size(), 1u);
  std::istringstream bad(line("p", R"({"role":"buyer","text":"hi"})"));
  EXPECT_THROW(load_corpus(bad, Schema::kPersuasion), CorpusError);
}

TEST(LoadCorpus, MalformedJsonNamesLine) {
  std::istringstream in(line("a", kTwoTurns) + "{not json\n");
  try {
    load_corpus(in, Schema::kNegotiation);
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LoadCorpus, DuplicateIdRejected) {
  std::istringstream in(line("a", kTwoTurns) + line("a", kTwoTurns));
  EXPECT_THROW(load_corpus(in, Schema::kNegotiation), CorpusError);
}

TEST(LoadCorpus, EmptyTurnsRejected) {
  std::istringstream in(line("a", ""));
  EXPECT_THROW(load_corpus(in, Schema::kNegotiation), CorpusError);
}

TEST(LoadCorpus, TargetAboveListingRejectedEqualWarns) {
  std::istringstream above(line("a", kTwoTurns, R"(,"buyer_target_price":150)"));
  EXPECT_THROW(load_corpus(above, Schema::kNegotiation), CorpusError);
  std::istringstream equal(line("a", kTwoTurns, R"(,"buyer_target_price":100)"));
  Diagnostics diag;
  EXPECT_EQ(load_corpus(equal, Schema::kNegotiation, &diag).size(), 1u);
  EXPECT_EQ(diag.warnings.size(), 1u);
}

TEST(LoadCorpus, MissingFileNamesPath) {
  try {
    load_corpus_file("/nonexistent/corpus.jsonl", Schema::kNegotiation);
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/corpus.jsonl"), std::string::npos);
  }
}

TEST(WriteCorpus, RoundTripKeepsNullDistinctFromEmpty) {
  std::istringstream in(
      line("a", R"({"role":"buyer","text":"Hello!","acts":["intro"],"strategies":[]},)"
                R"({"role":"seller","text":"Hi"})",
           R"(,"buyer_target_price":80.5)"));
  const auto ds = load_corpus(in, Schema::kNegotiation);
  std::ostringstream out;
  write_corpus(out, ds);
  std::istringstream again(out.str());
  const auto back = load_corpus(again, Schema::kNegotiation);
  EXPECT_EQ(back, ds);
  ASSERT_TRUE(back[0].turns[0].gold_strategies.has_value());
  EXPECT_TRUE(back[0].turns[0].gold_strategies->empty());
  EXPECT_FALSE(back[0].turns[1].gold_strategies.has_value());
  std::ostringstream twice;
  write_corpus(twice, back);
  EXPECT_EQ(twice.str(), out.str());
}

TEST(SplitCorpus, TenDialogs) {
  const auto sizes = split_sizes(10, {0.8, 0.1, 0.1, 7});
  EXPECT_EQ(sizes.train, 8u);
  EXPECT_EQ(sizes.val, 1u);
  EXPECT_EQ(sizes.test, 1u);
  const auto ds = make_dialogs(10);
  const auto parts = split_corpus(ds, {0.8, 0.1, 0.1, 7});
  EXPECT_EQ(parts.train.size(), 8u);
  EXPECT_EQ(parts.val.size(), 1u);
  EXPECT_EQ(parts.test.size(), 1u);
}

TEST(SplitCorpus, BargainingSizes) {
  // Floor for val and test, remainder to train.
  const double n = 6682.0;
  const auto sizes = split_sizes(6682, {5383 / n, 643 / n, 656 / n, 0});
  EXPECT_EQ(sizes.train, 5383u);
  EXPECT_EQ(sizes.val, 643u);
  EXPECT_EQ(sizes.test, 656u);
}

TEST(SplitCorpus, DeterministicPartition) {
  const auto ds = make_dialogs(57);
  const SplitSpec spec{0.7, 0.15, 0.15, 123};
  const auto a = split_corpus(ds, spec);
  const auto b = split_corpus(ds, spec);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.test, b.test);
  std::multiset<std::string> ids;
  for (const auto* part : {&a.train, &a.val, &a.test})
    for (const auto& d : *part) ids.insert(d.dialog_id);
  EXPECT_EQ(ids.size(), 57u);
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), 57u);
  const auto c = split_corpus(ds, {0.7, 0.15, 0.15, 124});
  EXPECT_NE(a.test, c.test);
}

TEST(SplitCorpus, BadFractions) {
  EXPECT_THROW(SplitSpec({0.5, 0.1, 0.1, 0}).validate(), CorpusError);
  EXPECT_THROW(SplitSpec({1.2, -0.1, -0.1, 0}).validate(), CorpusError);
}

TEST(CorpusStats, MeanTurns) {
  auto ds = make_dialogs(2);
  ds[0].turns.resize(3, ds[0].turns[0]);
  ds[1].turns.resize(5, ds[1].turns[0]);
  const auto s = corpus_stats(ds);
  EXPECT_EQ(s.num_dialogs, 2u);
  EXPECT_DOUBLE_EQ(s.mean_turns, 4.0);
  EXPECT_EQ(s.vocab_size, 1u);
}

TEST(CorpusStats, Empty) {
  const auto s = corpus_stats({});
  EXPECT_EQ(s.num_dialogs, 0u);
  EXPECT_EQ(s.mean_turns, 0.0);
  EXPECT_EQ(s.vocab_size, 0u);
}
