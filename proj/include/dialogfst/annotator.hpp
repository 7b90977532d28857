#ifndef DIALOGFST_ANNOTATOR_HPP
#define DIALOGFST_ANNOTATOR_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialogfst/corpus.hpp"
#include "dialogfst/error.hpp"
#include "dialogfst/labels.hpp"
#include "dialogfst/rules.hpp"

namespace dialogfst {

enum class GoldPolicy { kPreferGold, kRulesOnly };

std::string_view to_string(GoldPolicy policy);
GoldPolicy parse_gold_policy(std::string_view name);

struct AnnotatedTurn {
  Turn turn;
  DialogAct act = DialogAct::kInform;
  /// Deduplicated, in canonical inventory order.
  std::vector<std::string> strategies;
  std::vector<double> prices_mentioned;
  /// Set when classifier rows could not be filled from gold annotations.
  bool classifier_rows_missing = false;
};

struct AnnotatedDialog {
  std::string dialog_id;
  Scenario scenario;
  std::vector<AnnotatedTurn> turns;
};

/// All price mentions in order. Handles "$30", "30 dollars", "30k", "$9k",
/// "38.4", "1,200" and "<offer 30>". A bare number directly followed by a
/// non-price unit from the rules ("45k miles", "2 years") is skipped, as is a
/// bare number implausibly far from the listing price when one is known.
std::vector<double> extract_prices(std::string_view text, const Scenario& scenario,
                                   const RuleSet& rules = RuleSet::builtin());

class Annotator {
 public:
  Annotator(const RuleSet& rules, Schema schema, GoldPolicy gold_policy);

  /// First-match cascade: intro > init-price > insist > agree > disagree >
  /// inquire > inform.
  DialogAct classify_dialog_act(const Turn& turn, std::span<const AnnotatedTurn> context,
                                const Scenario& scenario) const;

  /// Rule rows from lexicons and dialog context, classifier rows from the
  /// turn's gold strategies (prefer_gold only). Returns labels in canonical
  /// order. When prefer_gold is set but the turn has no gold strategies the
  /// classifier rows are omitted, `classifier_rows_missing` is set and a
  /// warning is recorded.
  std::vector<std::string> detect_strategies(const Turn& turn,
                                             std::span<const AnnotatedTurn> context,
                                             const Scenario& scenario,
                                             bool* classifier_rows_missing = nullptr,
                                             Diagnostics* diagnostics = nullptr) const;

  AnnotatedTurn annotate_turn(const Turn& turn, std::span<const AnnotatedTurn> context,
                              const Scenario& scenario,
                              Diagnostics* diagnostics = nullptr) const;

  AnnotatedDialog annotate(const Dialog& dialog, Diagnostics* diagnostics = nullptr) const;

  /// Annotates dialogs independently; parallel across dialogs when OpenMP is
  /// enabled. Output order matches input order.
  std::vector<AnnotatedDialog> annotate_all(std::span<const Dialog> dialogs,
                                            Diagnostics* diagnostics = nullptr) const;

  Schema schema() const { return schema_; }
  GoldPolicy gold_policy() const { return gold_policy_; }

 private:
  const RuleSet& rules_;
  Schema schema_;
  GoldPolicy gold_policy_;
};

/// Writes act and strategies into the turns' gold fields, producing the
/// annotated-corpus form of the dialog.
Dialog to_dialog(const AnnotatedDialog& annotated);

/// Reads an annotated-corpus dialog back. Every turn must carry exactly one
/// act; missing strategies read as the empty set.
AnnotatedDialog from_annotated_dialog(const Dialog& dialog, Schema schema);

/// One role-prefixed act symbol per turn, e.g. "buyer:inquire".
std::vector<std::string> act_sequence(const AnnotatedDialog& dialog);

/// Per turn: one "role:label" symbol per strategy in canonical order (or
/// "role:none" when the set is empty), then "role:eot".
std::vector<std::string> strategy_sequence(const AnnotatedDialog& dialog);

struct TurnStrategies {
  std::string role;
  std::vector<std::string> strategies;
};

/// Inverse of strategy_sequence. Throws Error on a malformed stream.
std::vector<TurnStrategies> parse_strategy_sequence(std::span<const std::string> symbols);

/// "role:label".
std::string role_symbol(std::string_view role, std::string_view label);

/// Full symbol inventories for a schema, in canonical order (role-major).
std::vector<std::string> act_symbol_inventory(Schema schema);
std::vector<std::string> strategy_symbol_inventory(Schema schema);

}  // namespace dialogfst

#endif  // DIALOGFST_ANNOTATOR_HPP
