#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "dialogfst/annotator.hpp"
#include "dialogfst/error.hpp"
#include "dialogfst/labels.hpp"
#include "dialogfst/rng.hpp"
#include "dialogfst/rules.hpp"

using namespace dialogfst;

namespace {

Scenario bike() { return {"Bike", "A road bike", 100.0, 60.0}; }

Dialog dialog_of(std::vector<std::pair<std::string, std::string>> turns, Scenario s = bike()) {
  Dialog d;
  d.dialog_id = "t";
  d.scenario = s;
  for (auto& [role, text] : turns) d.turns.push_back({role, text, std::nullopt, std::nullopt});
  return d;
}

AnnotatedDialog annotate(const Dialog& d, GoldPolicy policy = GoldPolicy::kRulesOnly) {
  return Annotator(RuleSet::builtin(), Schema::kNegotiation, policy).annotate(d);
}

DialogAct last_act(std::vector<std::pair<std::string, std::string>> turns) {
  return annotate(dialog_of(std::move(turns))).turns.back().act;
}

std::vector<std::string> last_strategies(std::vector<std::pair<std::string, std::string>> turns) {
  return annotate(dialog_of(std::move(turns))).turns.back().strategies;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

// Dialog-act examples from the act table.
TEST(ActTable, Intro) { EXPECT_EQ(last_act({{"buyer", "Hello there!"}}), DialogAct::kIntro); }

TEST(ActTable, InitPrice) {
  EXPECT_EQ(last_act({{"buyer", "Can you do 30 dollars?"}}), DialogAct::kInitPrice);
}

TEST(ActTable, InsistRepeatsOwnPrice) {
  EXPECT_EQ(last_act({{"buyer", "Can you do 30 dollars?"},
                      {"seller", "No, I need at least 45."},
                      {"buyer", "I can't go lower than 30 dollars."}}),
            DialogAct::kInsist);
}

TEST(ActTable, Agree) {
  EXPECT_EQ(last_act({{"buyer", "Can you do 30 dollars?"}, {"seller", "Ok, you have a deal."}}),
            DialogAct::kAgree);
}

TEST(ActTable, Disagree) {
  EXPECT_EQ(last_act({{"buyer", "Can you do 30 dollars?"}, {"seller", "sorry I can't go that low."}}),
            DialogAct::kDisagree);
}

TEST(ActTable, Inform) {
  EXPECT_EQ(last_act({{"buyer", "Is it new?"}, {"seller", "This bike is brand new."}}),
            DialogAct::kInform);
}

TEST(ActTable, Inquire) {
  EXPECT_EQ(last_act({{"seller", "Which color do you prefer?"}}), DialogAct::kInquire);
}

TEST(ActCascade, NoDealIsNotAgree) {
  EXPECT_EQ(last_act({{"buyer", "Can you do 30?"}, {"seller", "No deal."}}), DialogAct::kDisagree);
}

TEST(ActCascade, OfferMarkerAndAccept) {
  EXPECT_EQ(last_act({{"buyer", "<offer 35>"}}), DialogAct::kInitPrice);
  EXPECT_EQ(last_act({{"buyer", "<offer 35>"}, {"seller", "<accept>"}}), DialogAct::kAgree);
  EXPECT_EQ(last_act({{"buyer", "<offer 35>"}, {"seller", "<reject>"}}), DialogAct::kDisagree);
}

TEST(ActCascade, GreetingWithPriceIsNotIntro) {
  EXPECT_EQ(last_act({{"buyer", "Hi, would you take 40?"}}), DialogAct::kInitPrice);
}

TEST(ActCascade, Deterministic) {
  const Dialog d = dialog_of({{"buyer", "Hello!"}, {"seller", "Hi"}, {"buyer", "How old is it?"}});
  const Annotator a(RuleSet::builtin(), Schema::kNegotiation, GoldPolicy::kRulesOnly);
  for (std::size_t i = 0; i < d.turns.size(); ++i) {
    const auto ctx = a.annotate(d).turns;
    const std::span<const AnnotatedTurn> prefix(ctx.data(), i);
    EXPECT_EQ(a.classify_dialog_act(d.turns[i], prefix, d.scenario),
              a.classify_dialog_act(d.turns[i], prefix, d.scenario));
  }
}

// Rule-row strategy examples from the strategy table.
TEST(StrategyTable, SideOffersExactly) {
  EXPECT_EQ(last_strategies({{"seller", "I can deliver it for you"}}),
            std::vector<std::string>{"negotiate_side_offers"});
}

TEST(StrategyTable, Hedge) {
  EXPECT_TRUE(has(last_strategies({{"seller", "I could come down a bit."}}), "hedge"));
}

TEST(StrategyTable, CommunicatePolitely) {
  for (const char* text : {"Hello there!", "Thank you so much", "Sorry about that", "Please consider it"})
    EXPECT_TRUE(has(last_strategies({{"buyer", text}}), "communicate_politely")) << text;
}

TEST(StrategyTable, BuildRapport) {
  EXPECT_TRUE(has(last_strategies({{"seller", "My kid really liked this bike, but he outgrew it."}}),
                  "build_rapport"));
}

TEST(StrategyTable, TalkInformally) {
  EXPECT_TRUE(has(last_strategies({{"seller", "Absolutely, ask away!"}}), "talk_informally"));
}

TEST(StrategyTable, ShowDominance) {
  EXPECT_TRUE(has(last_strategies({{"seller", "The absolute highest I can do is 640.0."}}),
                  "show_dominance"));
}

TEST(StrategyTable, NegativeSentiment) {
  EXPECT_TRUE(has(last_strategies({{"seller", "Sadly I simply cannot go under 500 dollars."}}),
                  "negative_sentiment"));
}

TEST(StrategyTable, CertaintyWords) {
  EXPECT_TRUE(has(last_strategies({{"seller", "It has always had a screen protector"}}),
                  "certainty_words"));
}

TEST(StrategyTable, ProposePriceNeedsEarlierPrice) {
  const Scenario car{"Car", "Sedan", 10000.0, std::nullopt};
  const auto a = annotate(dialog_of({{"seller", "It is listed at $10k."}, {"buyer", "How about $9k?"}}, car));
  EXPECT_FALSE(has(a.turns[0].strategies, "propose_price"));
  EXPECT_TRUE(has(a.turns[1].strategies, "propose_price"));
}

TEST(StrategyTable, DoNotProposeFirstGoesToSellerAfterBuyerPrice) {
  const auto a = annotate(dialog_of({{"seller", "Hi, interested?"},
                                     {"buyer", "Would you take 60?"},
                                     {"seller", "I can do 90."},
                                     {"buyer", "70?"},
                                     {"seller", "85."}}));
  EXPECT_FALSE(has(a.turns[1].strategies, "do_not_propose_first"));
  EXPECT_TRUE(has(a.turns[2].strategies, "do_not_propose_first"));
  EXPECT_FALSE(has(a.turns[4].strategies, "do_not_propose_first"));
  const auto b = annotate(dialog_of({{"seller", "Asking 100."}, {"buyer", "60?"}, {"seller", "90."}}));
  for (const auto& t : b.turns) EXPECT_FALSE(has(t.strategies, "do_not_propose_first"));
}

TEST(StrategyGold, PreferGoldAddsClassifierRows) {
  Dialog d = dialog_of({{"seller", "The car has leather seats."}});
  d.turns[0].gold_strategies = std::vector<std::string>{"describe_product", "hedge"};
  const auto a = annotate(d, GoldPolicy::kPreferGold);
  EXPECT_TRUE(has(a.turns[0].strategies, "describe_product"));
  // Rule rows still come from rules, not from gold.
  EXPECT_FALSE(has(a.turns[0].strategies, "hedge"));
  EXPECT_FALSE(a.turns[0].classifier_rows_missing);
}

TEST(StrategyGold, MissingGoldFlagsAndWarns) {
  Diagnostics diag;
  const Annotator a(RuleSet::builtin(), Schema::kNegotiation, GoldPolicy::kPreferGold);
  const auto out = a.annotate(dialog_of({{"seller", "Nice car."}}), &diag);
  EXPECT_TRUE(out.turns[0].classifier_rows_missing);
  EXPECT_EQ(diag.warnings.size(), 1u);
}

TEST(StrategyGold, RulesOnlyNeverEmitsClassifierRows) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"the", "car", "has", "leather", "seats", "deliver",
                                          "could", "please", "always", "40", "$30", "absolute",
                                          "my", "kid", "sadly", "yeah", "?", "!"};
  for (int trial = 0; trial < 200; ++trial) {
    Dialog d = dialog_of({});
    for (int t = 0; t < 4; ++t) {
      std::string text;
      for (int w = 0; w < 6; ++w) text += words[uniform_below(rng, words.size())] + " ";
      d.turns.push_back({t % 2 ? "seller" : "buyer", text, std::nullopt,
                         std::vector<std::string>{"describe_product", "address_concerns"}});
    }
    for (const auto& turn : annotate(d, GoldPolicy::kRulesOnly).turns)
      for (const auto& label : turn.strategies) {
        const auto row = strategy_row(Schema::kNegotiation, label);
        ASSERT_TRUE(row.has_value());
        EXPECT_EQ(strategy_inventory(Schema::kNegotiation)[*row].detector, DetectorKind::kRule);
      }
  }
}

TEST(Prices, Examples) {
  EXPECT_EQ(extract_prices("Can you do 30 dollars?", bike()), std::vector<double>{30});
  EXPECT_TRUE(extract_prices("Hello there!", bike()).empty());
  EXPECT_EQ(extract_prices("I could go down to 38.4.", bike()), std::vector<double>{38.4});
  const Scenario car{"Car", "Sedan", 10000.0, std::nullopt};
  EXPECT_EQ(extract_prices("How about $9k?", car), std::vector<double>{9000});
  EXPECT_EQ(extract_prices("I'd do 9,500", car), std::vector<double>{9500});
  EXPECT_TRUE(extract_prices("It has 45k miles", car).empty());
  EXPECT_TRUE(extract_prices("Bought it in 2015", car).empty());
}

TEST(Sequences, ActSequence) {
  const auto a = annotate(dialog_of({{"buyer", "Hello!"}, {"seller", "Hi"}}));
  EXPECT_EQ(act_sequence(a), (std::vector<std::string>{"buyer:intro", "seller:intro"}));
  EXPECT_TRUE(act_sequence(AnnotatedDialog{}).empty());
  const auto b = annotate(dialog_of({{"buyer", "Can you do 30 dollars?"}}));
  EXPECT_EQ(act_sequence(b), std::vector<std::string>{"buyer:init-price"});
}

TEST(Sequences, StrategyEncoding) {
  AnnotatedDialog d;
  AnnotatedTurn t;
  t.turn.role = "seller";
  t.strategies = {"propose_price", "hedge"};
  d.turns.push_back(t);
  EXPECT_EQ(strategy_sequence(d),
            (std::vector<std::string>{"seller:propose_price", "seller:hedge", "seller:eot"}));
  d.turns[0].strategies.clear();
  EXPECT_EQ(strategy_sequence(d), (std::vector<std::string>{"seller:none", "seller:eot"}));
  AnnotatedDialog two;
  AnnotatedTurn b, s;
  b.turn.role = "buyer";
  b.strategies = {"communicate_politely"};
  s.turn.role = "seller";
  s.strategies = {"propose_price"};
  two.turns = {b, s};
  EXPECT_EQ(strategy_sequence(two),
            (std::vector<std::string>{"buyer:communicate_politely", "buyer:eot",
                                      "seller:propose_price", "seller:eot"}));
}

TEST(Sequences, StrategyEncodingCanonicalOrderAndInverse) {
  // Annotation emits labels in table-row order regardless of gold order.
  Dialog d = dialog_of({{"seller", "I could deliver it."}});
  d.turns[0].gold_strategies = std::vector<std::string>{"address_concerns", "describe_product"};
  const auto a = annotate(d, GoldPolicy::kPreferGold);
  EXPECT_EQ(strategy_sequence(a),
            (std::vector<std::string>{"seller:describe_product", "seller:address_concerns",
                                      "seller:negotiate_side_offers", "seller:hedge",
                                      "seller:eot"}));

  std::mt19937_64 rng(9);
  const auto inventory = strategy_inventory(Schema::kNegotiation);
  for (int trial = 0; trial < 100; ++trial) {
    AnnotatedDialog r;
    for (std::size_t t = 0; t < 1 + uniform_below(rng, 6); ++t) {
      AnnotatedTurn at;
      at.turn.role = t % 2 ? "seller" : "buyer";
      for (const auto& row : inventory)
        if (uniform_unit(rng) < 0.2) at.strategies.emplace_back(row.label);
      r.turns.push_back(at);
    }
    const auto symbols = strategy_sequence(r);
    const auto parsed = parse_strategy_sequence(symbols);
    ASSERT_EQ(parsed.size(), r.turns.size());
    for (std::size_t t = 0; t < parsed.size(); ++t) {
      EXPECT_EQ(parsed[t].role, r.turns[t].turn.role);
      EXPECT_EQ(parsed[t].strategies, r.turns[t].strategies);
    }
  }
}

TEST(Sequences, ParseRejectsMalformed) {
  EXPECT_THROW(parse_strategy_sequence(std::vector<std::string>{"seller:hedge"}), Error);
  EXPECT_THROW(parse_strategy_sequence(std::vector<std::string>{"hedge", "seller:eot"}), Error);
}

TEST(Inventories, Sizes) {
  EXPECT_EQ(act_symbol_inventory(Schema::kNegotiation).size(), 14u);
  EXPECT_EQ(strategy_inventory(Schema::kNegotiation).size(), 15u);
  EXPECT_EQ(strategy_inventory(Schema::kPersuasion).size(), 10u);
  EXPECT_EQ(strategy_symbol_inventory(Schema::kNegotiation).size(), 2u * (15 + 2));
}

TEST(Rules, ParseErrorsCiteOriginAndLine) {
  const std::string header = "#! dialogfst-rules v1\n";
  try {
    RuleSet::parse(header + "hedge word could\nnot_a_label word x\n", "mem.rules");
    FAIL();
  } catch (const RulesError& e) {
    EXPECT_NE(std::string(e.what()).find("mem.rules:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RuleSet::parse(header + "hedge glob could\n"), RulesError);
  EXPECT_THROW(RuleSet::parse(header + "hedge regex (unclosed\n"), RulesError);
  EXPECT_THROW(RuleSet::parse("hedge word could\n"), RulesError);
}

TEST(Rules, MissingFileNamesPath) {
  try {
    RuleSet::load("/no/such/file.rules");
    FAIL();
  } catch (const RulesError& e) {
    EXPECT_NE(std::string(e.what()).find("/no/such/file.rules"), std::string::npos);
  }
}

TEST(Rules, ShippedFileEqualsBuiltin) {
  const RuleSet file = RuleSet::load(std::string(DIALOGFST_RULES_DIR) + "/negotiation.rules");
  EXPECT_EQ(file.version(), RuleSet::builtin().version());
  EXPECT_EQ(file.rules().size(), RuleSet::builtin().rules().size());
}

TEST(Rules, WordPatternsRespectWordBoundaries) {
  const RuleSet r = RuleSet::parse("#! dialogfst-rules v1\nhedge word could\n");
  EXPECT_TRUE(r.matches("hedge", normalize_text("I could do it")));
  EXPECT_FALSE(r.matches("hedge", normalize_text("I couldn't")));
  EXPECT_FALSE(r.matches("hedge", normalize_text("couldbe")));
}

TEST(Rules, NormalizeText) {
  EXPECT_EQ(normalize_text("  I’M   Here\t"), "i'm here");
}
