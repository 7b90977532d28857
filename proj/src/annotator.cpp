#include "dialogfst/annotator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace dialogfst {

std::string_view to_string(GoldPolicy policy) {
  return policy == GoldPolicy::kPreferGold ? "prefer_gold" : "rules_only";
}

GoldPolicy parse_gold_policy(std::string_view name) {
  if (name == "prefer_gold") return GoldPolicy::kPreferGold;
  if (name == "rules_only") return GoldPolicy::kRulesOnly;
  throw Error("unknown gold policy '" + std::string(name) +
              "' (expected prefer_gold or rules_only)");
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string strip_punct(std::string word) {
  while (!word.empty() && std::string_view(".,!?;:)\"'").find(word.back()) != std::string_view::npos)
    word.pop_back();
  return word;
}

bool same_price(double a, double b) { return std::abs(a - b) < 1e-9; }

}  // namespace

std::vector<double> extract_prices(std::string_view raw, const Scenario& scenario,
                                   const RuleSet& rules) {
  const std::string text = normalize_text(raw);
  std::vector<double> prices;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (!is_digit(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    // Digits embedded in a word ("mp3", "i7") are not numbers.
    if (begin > 0 && (is_alpha(text[begin - 1]) || text[begin - 1] == '_')) {
      while (i < n && (is_digit(text[i]) || is_alpha(text[i]))) ++i;
      continue;
    }
    std::string digits;
    // A comma followed by exactly three digits groups thousands ("1,200").
    auto grouping_comma = [&](std::size_t k) {
      return text[k] == ',' && k + 3 < n && is_digit(text[k + 1]) && is_digit(text[k + 2]) &&
             is_digit(text[k + 3]) && (k + 4 == n || !is_digit(text[k + 4]));
    };
    while (i < n && (is_digit(text[i]) || grouping_comma(i))) {
      if (text[i] != ',') digits.push_back(text[i]);
      ++i;
    }
    bool has_fraction = false;
    if (i + 1 < n && text[i] == '.' && is_digit(text[i + 1])) {
      has_fraction = true;
      digits.push_back('.');
      ++i;
      while (i < n && is_digit(text[i])) digits.push_back(text[i++]);
    }
    double value = 0.0;
    {
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (res.ec != std::errc()) continue;
    }
    // Times ("5:30") and ranges glued to letters ("24th", "4x4") are skipped.
    if (i < n && text[i] == ':' && i + 1 < n && is_digit(text[i + 1])) {
      while (i < n && (is_digit(text[i]) || text[i] == ':')) ++i;
      continue;
    }
    bool thousands = false;
    if (i < n && text[i] == 'k' && (i + 1 == n || !is_alpha(text[i + 1]))) {
      thousands = true;
      ++i;
    } else if (i < n && is_alpha(text[i])) {
      while (i < n && is_alpha(text[i])) ++i;
      continue;
    }
    if (thousands) value *= 1000.0;

    std::size_t before = begin;
    while (before > 0 && text[before - 1] == ' ') --before;
    const bool dollar_sign = before > 0 && text[before - 1] == '$';
    const bool offer_marker =
        before >= 6 && text.compare(before - 6, 6, "<offer") == 0;

    // Following token: glued suffix ("30%") or the next whitespace-separated word.
    std::string next_word;
    std::size_t j = i;
    if (j < n && text[j] != ' ') {
      while (j < n && text[j] != ' ') next_word.push_back(text[j++]);
    } else {
      while (j < n && text[j] == ' ') ++j;
      while (j < n && text[j] != ' ') next_word.push_back(text[j++]);
    }
    next_word = strip_punct(next_word);
    const bool currency_word = next_word == "dollars" || next_word == "dollar" ||
                               next_word == "bucks" || next_word == "usd";
    const bool marked = dollar_sign || currency_word || offer_marker;
    if (!marked) {
      if (!next_word.empty() && rules.matches("price.nonunit", next_word)) continue;
      if (!thousands && !has_fraction && digits.size() == 4 && value >= 1900 && value <= 2099)
        continue;  // a year
      if (scenario.listing_price > 0.0 &&
          (value < 0.1 * scenario.listing_price || value > 10.0 * scenario.listing_price))
        continue;
    }
    prices.push_back(value);
  }
  return prices;
}

Annotator::Annotator(const RuleSet& rules, Schema schema, GoldPolicy gold_policy)
    : rules_(rules), schema_(schema), gold_policy_(gold_policy) {}

DialogAct Annotator::classify_dialog_act(const Turn& turn, std::span<const AnnotatedTurn> context,
                                         const Scenario& scenario) const {
  const std::string text = normalize_text(turn.text);
  const auto prices = extract_prices(turn.text, scenario, rules_);
  const bool prior_price = std::any_of(context.begin(), context.end(), [](const AnnotatedTurn& t) {
    return !t.prices_mentioned.empty();
  });

  if (prices.empty() && rules_.matches("act.intro", text)) return DialogAct::kIntro;
  if (rules_.matches("act.offer", text)) return DialogAct::kInitPrice;
  if (!prices.empty() && !prior_price) return DialogAct::kInitPrice;
  if (!prices.empty()) {
    for (auto it = context.rbegin(); it != context.rend(); ++it) {
      if (it->turn.role != turn.role || it->prices_mentioned.empty()) continue;
      for (double p : prices)
        for (double q : it->prices_mentioned)
          if (same_price(p, q)) return DialogAct::kInsist;
      break;
    }
  }
  if (rules_.matches("act.agree", text) && !rules_.matches("act.agree_veto", text))
    return DialogAct::kAgree;
  if (rules_.matches("act.disagree", text)) return DialogAct::kDisagree;
  if (text.find('?') != std::string::npos || rules_.matches("act.inquire", text))
    return DialogAct::kInquire;
  return DialogAct::kInform;
}

std::vector<std::string> Annotator::detect_strategies(const Turn& turn,
                                                      std::span<const AnnotatedTurn> context,
                                                      const Scenario& scenario,
                                                      bool* classifier_rows_missing,
                                                      Diagnostics* diagnostics) const {
  const auto inventory = strategy_inventory(schema_);
  std::vector<bool> active(inventory.size(), false);
  if (classifier_rows_missing) *classifier_rows_missing = false;

  if (schema_ == Schema::kNegotiation) {
    const std::string text = normalize_text(turn.text);
    const auto prices = extract_prices(turn.text, scenario, rules_);
    const auto first_priced =
        std::find_if(context.begin(), context.end(),
                     [](const AnnotatedTurn& t) { return !t.prices_mentioned.empty(); });
    for (std::size_t row = 0; row < inventory.size(); ++row) {
      const StrategyInfo& info = inventory[row];
      if (info.detector != DetectorKind::kRule) continue;
      if (info.label == "propose_price") {
        active[row] = !prices.empty() && first_priced != context.end();
      } else if (info.label == "do_not_propose_first") {
        // Credited to the seller's first turn after the buyer named the
        // dialog's first price.
        if (turn.role == "seller" && first_priced != context.end() &&
            first_priced->turn.role == "buyer") {
          active[row] = std::none_of(first_priced + 1, context.end(), [](const AnnotatedTurn& t) {
            return t.turn.role == "seller";
          });
        }
      } else {
        active[row] = rules_.matches(info.label, text);
      }
    }
  }

  if (gold_policy_ == GoldPolicy::kPreferGold) {
    if (turn.gold_strategies) {
      for (const std::string& label : *turn.gold_strategies) {
        const auto row = strategy_row(schema_, label);
        if (row && inventory[*row].detector == DetectorKind::kGold) active[*row] = true;
      }
    } else {
      if (classifier_rows_missing) *classifier_rows_missing = true;
      if (diagnostics)
        diagnostics->warn("turn without gold strategies; classifier rows omitted: \"" +
                          turn.text.substr(0, 60) + "\"");
    }
  }

  std::vector<std::string> labels;
  for (std::size_t row = 0; row < inventory.size(); ++row)
    if (active[row]) labels.emplace_back(inventory[row].label);
  return labels;
}

AnnotatedTurn Annotator::annotate_turn(const Turn& turn, std::span<const AnnotatedTurn> context,
                                       const Scenario& scenario, Diagnostics* diagnostics) const {
  AnnotatedTurn out;
  out.turn = turn;
  out.act = classify_dialog_act(turn, context, scenario);
  out.strategies =
      detect_strategies(turn, context, scenario, &out.classifier_rows_missing, diagnostics);
  out.prices_mentioned = extract_prices(turn.text, scenario, rules_);
  return out;
}

AnnotatedDialog Annotator::annotate(const Dialog& dialog, Diagnostics* diagnostics) const {
  AnnotatedDialog out;
  out.dialog_id = dialog.dialog_id;
  out.scenario = dialog.scenario;
  out.turns.reserve(dialog.turns.size());
  std::size_t missing = 0;
  for (const Turn& turn : dialog.turns) {
    out.turns.push_back(annotate_turn(turn, out.turns, dialog.scenario, nullptr));
    missing += out.turns.back().classifier_rows_missing;
  }
  if (diagnostics && missing > 0)
    diagnostics->warn("dialog '" + dialog.dialog_id + "': " + std::to_string(missing) + " of " +
                      std::to_string(dialog.turns.size()) +
                      " turns lack gold strategies; classifier rows omitted");
  return out;
}

std::vector<AnnotatedDialog> Annotator::annotate_all(std::span<const Dialog> dialogs,
                                                     Diagnostics* diagnostics) const {
  std::vector<AnnotatedDialog> out(dialogs.size());
  const auto n = static_cast<std::ptrdiff_t>(dialogs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = annotate(dialogs[i], nullptr);
  }
  if (!diagnostics) return out;
  std::size_t dialogs_missing = 0, turns_missing = 0;
  const AnnotatedDialog* first = nullptr;
  for (const auto& d : out) {
    std::size_t m = 0;
    for (const auto& t : d.turns) m += t.classifier_rows_missing;
    if (m == 0) continue;
    if (!first) first = &d;
    ++dialogs_missing;
    turns_missing += m;
  }
  if (dialogs_missing > 0)
    diagnostics->warn(std::to_string(dialogs_missing) + " dialogs (" +
                      std::to_string(turns_missing) +
                      " turns) lack gold strategies; classifier rows omitted (first: '" +
                      first->dialog_id + "')");
  return out;
}

Dialog to_dialog(const AnnotatedDialog& annotated) {
  Dialog d;
  d.dialog_id = annotated.dialog_id;
  d.scenario = annotated.scenario;
  for (const AnnotatedTurn& t : annotated.turns) {
    Turn turn = t.turn;
    turn.gold_acts = std::vector<std::string>{std::string(to_string(t.act))};
    turn.gold_strategies = t.strategies;
    d.turns.push_back(std::move(turn));
  }
  return d;
}

AnnotatedDialog from_annotated_dialog(const Dialog& dialog, Schema schema) {
  AnnotatedDialog out;
  out.dialog_id = dialog.dialog_id;
  out.scenario = dialog.scenario;
  for (const Turn& turn : dialog.turns) {
    if (!turn.gold_acts || turn.gold_acts->size() != 1)
      throw Error("dialog '" + dialog.dialog_id + "' is not annotated: every turn needs one act");
    const auto act = parse_dialog_act(turn.gold_acts->front());
    if (!act)
      throw Error("dialog '" + dialog.dialog_id + "' has unknown act '" +
                  turn.gold_acts->front() + "'");
    AnnotatedTurn at;
    at.turn = turn;
    at.act = *act;
    std::vector<bool> active(strategy_inventory(schema).size(), false);
    if (turn.gold_strategies) {
      for (const auto& label : *turn.gold_strategies) {
        const auto row = strategy_row(schema, label);
        if (!row)
          throw Error("dialog '" + dialog.dialog_id + "' has unknown strategy '" + label + "'");
        active[*row] = true;
      }
    }
    const auto inventory = strategy_inventory(schema);
    for (std::size_t row = 0; row < inventory.size(); ++row)
      if (active[row]) at.strategies.emplace_back(inventory[row].label);
    out.turns.push_back(std::move(at));
  }
  return out;
}

std::string role_symbol(std::string_view role, std::string_view label) {
  std::string s(role);
  s.push_back(':');
  s.append(label);
  return s;
}

std::vector<std::string> act_sequence(const AnnotatedDialog& dialog) {
  std::vector<std::string> out;
  out.reserve(dialog.turns.size());
  for (const AnnotatedTurn& t : dialog.turns) out.push_back(role_symbol(t.turn.role, to_string(t.act)));
  return out;
}

std::vector<std::string> strategy_sequence(const AnnotatedDialog& dialog) {
  std::vector<std::string> out;
  for (const AnnotatedTurn& t : dialog.turns) {
    if (t.strategies.empty()) out.push_back(role_symbol(t.turn.role, kNoStrategy));
    for (const auto& s : t.strategies) out.push_back(role_symbol(t.turn.role, s));
    out.push_back(role_symbol(t.turn.role, kEndOfTurn));
  }
  return out;
}

std::vector<TurnStrategies> parse_strategy_sequence(std::span<const std::string> symbols) {
  std::vector<TurnStrategies> turns;
  TurnStrategies current;
  bool open = false;
  bool saw_none = false;
  for (const std::string& sym : symbols) {
    const auto colon = sym.find(':');
    if (colon == std::string::npos) throw Error("strategy symbol without role: '" + sym + "'");
    std::string role = sym.substr(0, colon);
    std::string label = sym.substr(colon + 1);
    if (open && role != current.role)
      throw Error("role changed inside a turn at symbol '" + sym + "'");
    if (!open) {
      current = TurnStrategies{role, {}};
      open = true;
      saw_none = false;
    }
    if (label == kEndOfTurn) {
      if (current.strategies.empty() && !saw_none)
        throw Error("turn closed without strategies or a none marker");
      turns.push_back(std::move(current));
      current = {};
      open = false;
    } else if (label == kNoStrategy) {
      if (!current.strategies.empty() || saw_none) throw Error("misplaced none marker");
      saw_none = true;
    } else {
      if (saw_none) throw Error("strategy after none marker");
      current.strategies.push_back(std::move(label));
    }
  }
  if (open) throw Error("strategy stream ends inside a turn");
  return turns;
}

std::vector<std::string> act_symbol_inventory(Schema schema) {
  std::vector<std::string> out;
  for (auto role : schema_roles(schema))
    for (DialogAct act : all_dialog_acts()) out.push_back(role_symbol(role, to_string(act)));
  return out;
}

std::vector<std::string> strategy_symbol_inventory(Schema schema) {
  std::vector<std::string> out;
  for (auto role : schema_roles(schema)) {
    for (const auto& s : strategy_inventory(schema)) out.push_back(role_symbol(role, s.label));
    out.push_back(role_symbol(role, kNoStrategy));
    out.push_back(role_symbol(role, kEndOfTurn));
  }
  return out;
}

}  // namespace dialogfst
