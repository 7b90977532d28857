#ifndef DIALOGFST_EVAL_HPP
#define DIALOGFST_EVAL_HPP

#include <compare>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialogfst/annotator.hpp"
#include "dialogfst/fst.hpp"
#include "dialogfst/inference.hpp"

namespace dialogfst {

using LabelSet = std::set<std::string>;

// ---------------------------------------------------------------------------
// Baselines. Each baseline is itself an Fst, so every metric applies to it
// unchanged.

enum class BaselineKind { kUniform, kUnigram, kMarkov1 };

std::string_view to_string(BaselineKind kind);

/// uniform: one state, no counts. unigram: one state counted on the training
/// data. markov1: a start state plus one state per previous symbol. Throws
/// EvalError when train has no tokens for unigram or markov1.
Fst baseline_predictor(BaselineKind kind, const Alphabet& alphabet,
                       std::span<const Sequence> train, double smoothing_lambda);

/// Fraction of tokens equal to the argmax of the unmasked prediction at the
/// state reached before them. Throws EvalError when there are no tokens.
double next_symbol_accuracy(const Fst& fst, std::span<const Sequence> sequences);

// ---------------------------------------------------------------------------
// Symbol streams of annotated dialogs.

std::vector<Sequence> act_sequences(std::span<const AnnotatedDialog> dialogs,
                                    const Alphabet& alphabet);
std::vector<Sequence> strategy_sequences(std::span<const AnnotatedDialog> dialogs,
                                         const Alphabet& alphabet);

// ---------------------------------------------------------------------------
// Next-act prediction.

/// For every turn t >= 1: traverse acts 0..t-1, predict masked to the symbols
/// of turn t's role, compare the argmax with the gold act. Throws EvalError on
/// an empty test set or when a test act symbol is missing from the alphabet.
double next_act_accuracy(const Fst& fst, std::span<const AnnotatedDialog> test);

// ---------------------------------------------------------------------------
// Strategy-set prediction.

/// A NaN tau means 0.5 / (number of candidate labels for the role).
struct StrategyRule {
  enum class Kind { kTopK, kThreshold };
  Kind kind = Kind::kTopK;
  std::size_t k = 1;
  double tau = std::numeric_limits<double>::quiet_NaN();

  static StrategyRule top_k(std::size_t k) { return {Kind::kTopK, k, 0.0}; }
  static StrategyRule threshold(double tau = std::numeric_limits<double>::quiet_NaN()) {
    return {Kind::kThreshold, 0, tau};
  }
};

/// Top-k with k = round(mean gold strategy-set size over the prediction
/// positions of train).
StrategyRule default_strategy_rule(std::span<const AnnotatedDialog> train);

/// Reads the trace's final embedding, keeps the `role:` symbols other than the
/// none/eot markers, renormalizes and applies the rule. Returns bare labels.
/// Throws EvalError when the trace is inconsistent with the automaton.
LabelSet predict_strategy_set(const Fst& fst, const Trace& trace, const StrategyRule& rule,
                              std::string_view role);

struct StrategyScores {
  double exact_accuracy = 0.0;
  double macro_f1 = 0.0;
};

/// Exact-set accuracy and macro F1. Labels averaged over are `inventory` when
/// given (labels absent from both sides then score F1 = 0), otherwise every
/// label seen in predictions or gold. With no labels at all, macro F1 is 1.
/// Throws EvalError on a length mismatch.
StrategyScores strategy_metrics(std::span<const LabelSet> predictions,
                                std::span<const LabelSet> gold,
                                std::optional<std::span<const std::string>> inventory = {});

// ---------------------------------------------------------------------------
// Expanded ground truth.

struct TurnSignature {
  std::string role;
  DialogAct act = DialogAct::kInform;
  LabelSet strategies;

  auto operator<=>(const TurnSignature&) const = default;
};

/// The two turns before a prediction point; a missing turn is nullopt.
struct HistoryKey {
  std::optional<TurnSignature> before_previous;
  std::optional<TurnSignature> previous;

  auto operator<=>(const HistoryKey&) const = default;
};

/// Key for predicting turn `position` (>= 1) of the dialog.
HistoryKey history_key(const AnnotatedDialog& dialog, std::size_t position);

LabelSet strategy_set(const AnnotatedTurn& turn);

/// Union of the gold next-turn strategy sets over every training position
/// whose history key matches exactly, plus `own_gold`.
LabelSet expand_ground_truth(std::span<const AnnotatedDialog> train, const HistoryKey& key,
                             const LabelSet& own_gold);

/// Precomputed expand_ground_truth over a training set.
class ExpansionIndex {
 public:
  explicit ExpansionIndex(std::span<const AnnotatedDialog> train);
  LabelSet expand(const HistoryKey& key, const LabelSet& own_gold) const;

 private:
  std::map<HistoryKey, LabelSet> unions_;
};

enum class BigramMatch { kSubset, kExact };

/// Correct when the prediction is nonempty and a subset of (or, for kExact,
/// equal to) the expanded set, or when prediction and own gold are both empty.
bool bigram_correct(const LabelSet& predicted, const LabelSet& gold, const LabelSet& expanded,
                    BigramMatch match);

/// The same rule against unexpanded gold.
double subset_accuracy(std::span<const LabelSet> predictions, std::span<const LabelSet> gold);

double bigram_accuracy_from_sets(std::span<const LabelSet> predictions,
                                 std::span<const LabelSet> gold,
                                 std::span<const LabelSet> expanded, BigramMatch match);

/// Predicted and gold strategy sets at every position t >= 1 of the test set.
struct StrategyPredictions {
  std::vector<LabelSet> predicted;
  std::vector<LabelSet> gold;
  std::vector<HistoryKey> keys;
};
StrategyPredictions predict_strategies(const Fst& fst, std::span<const AnnotatedDialog> test,
                                       const StrategyRule& rule);

double bigram_accuracy(const Fst& fst, std::span<const AnnotatedDialog> train,
                       std::span<const AnnotatedDialog> test, const StrategyRule& rule,
                       BigramMatch match = BigramMatch::kSubset);

// ---------------------------------------------------------------------------
// Comparison report.

struct EvalRow {
  std::string model;
  std::optional<double> next_act_accuracy;
  std::optional<double> act_perplexity;
  std::optional<double> strategy_exact_accuracy;
  std::optional<double> strategy_macro_f1;
  std::optional<double> bigram_accuracy;
  std::optional<double> strategy_perplexity;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::size_t test_dialogs = 0;
  StrategyRule strategy_rule;
  BigramMatch bigram_match = BigramMatch::kSubset;
};

struct EvalOptions {
  std::optional<StrategyRule> strategy_rule;
  BigramMatch bigram_match = BigramMatch::kSubset;
  std::vector<BaselineKind> baselines = {BaselineKind::kUniform, BaselineKind::kUnigram,
                                         BaselineKind::kMarkov1};
};

/// Scores the act model and/or strategy model (either may be null) and one
/// baseline per kind, trained on `train` with the model's alphabet and
/// lambda. Perplexity is nullopt when some test event has probability zero.
EvalReport compare_report(const Fst* act_model, const Fst* strategy_model,
                          std::span<const AnnotatedDialog> train,
                          std::span<const AnnotatedDialog> test, const EvalOptions& options = {});

std::string report_to_json(const EvalReport& report);
/// Aligned plain-text table, one row per model.
std::string report_to_text(const EvalReport& report);

}  // namespace dialogfst

#endif  // DIALOGFST_EVAL_HPP
