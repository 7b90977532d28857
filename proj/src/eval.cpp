#include "dialogfst/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "dialogfst/error.hpp"
#include "dialogfst/learn.hpp"
#include "json.hpp"

namespace dialogfst {

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kUniform:
      return "uniform";
    case BaselineKind::kUnigram:
      return "unigram";
    case BaselineKind::kMarkov1:
      return "markov1";
  }
  return "?";
}

Fst baseline_predictor(BaselineKind kind, const Alphabet& alphabet,
                       std::span<const Sequence> train, double smoothing_lambda) {
  if (kind == BaselineKind::kUniform) return Fst(alphabet, smoothing_lambda);
  std::size_t tokens = 0;
  for (const auto& s : train) tokens += s.size();
  if (tokens == 0)
    throw EvalError(std::string(to_string(kind)) + " baseline needs non-empty training data");
  if (kind == BaselineKind::kUnigram) {
    Fst f(alphabet, smoothing_lambda);
    run_counts(f, train);
    return f;
  }
  // Start state 0, then state 1 + x after reading x.
  const std::size_t a = alphabet.size();
  const std::size_t states = a + 1;
  std::vector<StateId> delta(states * a);
  for (std::size_t s = 0; s < states; ++s)
    for (std::size_t x = 0; x < a; ++x) delta[s * a + x] = static_cast<StateId>(1 + x);
  std::vector<std::optional<Lineage>> lineage(states);
  for (std::size_t x = 0; x < a; ++x) lineage[1 + x] = Lineage{0, static_cast<SymbolId>(x), {}};
  Fst f = Fst::from_parts(alphabet, states, 0, smoothing_lambda, std::move(delta),
                          std::vector<Count>(states * a, 0), std::move(lineage));
  run_counts(f, train);
  return f;
}

namespace {

SymbolId argmax(const StateEmbedding& e) {
  return static_cast<SymbolId>(std::max_element(e.probs.begin(), e.probs.end()) - e.probs.begin());
}

Sequence encode_for_eval(const Alphabet& alphabet, const std::vector<std::string>& symbols,
                         const std::string& dialog_id) {
  Sequence out;
  out.reserve(symbols.size());
  for (const auto& s : symbols) {
    auto id = alphabet.find(s);
    if (!id) {
      std::string names;
      for (const auto& n : alphabet.names()) names += (names.empty() ? "" : " ") + n;
      throw EvalError("alphabet mismatch: symbol '" + s + "' in dialog '" + dialog_id +
                      "' is not in the model alphabet [" + names + "]");
    }
    out.push_back(*id);
  }
  return out;
}

std::vector<SymbolId> role_mask(const Alphabet& alphabet, std::string_view role, bool labels_only) {
  std::vector<SymbolId> mask;
  const std::string prefix = std::string(role) + ":";
  for (SymbolId x = 0; x < alphabet.size(); ++x) {
    const std::string& n = alphabet.name(x);
    if (n.rfind(prefix, 0) != 0) continue;
    if (labels_only) {
      const std::string_view label = std::string_view(n).substr(prefix.size());
      if (label == kNoStrategy || label == kEndOfTurn) continue;
    }
    mask.push_back(x);
  }
  return mask;
}

std::size_t prediction_positions(std::span<const AnnotatedDialog> dialogs) {
  std::size_t n = 0;
  for (const auto& d : dialogs) n += d.turns.empty() ? 0 : d.turns.size() - 1;
  return n;
}

}  // namespace

double next_symbol_accuracy(const Fst& fst, std::span<const Sequence> sequences) {
  std::size_t correct = 0, total = 0;
  for (const Sequence& seq : sequences) {
    StateId s = fst.start_state();
    for (SymbolId x : seq) {
      fst.check_symbol(x);
      correct += argmax(emission_pdf(fst, s)) == x;
      ++total;
      s = fst.next(s, x);
    }
  }
  if (total == 0) throw EvalError("accuracy is undefined without tokens");
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<Sequence> act_sequences(std::span<const AnnotatedDialog> dialogs,
                                    const Alphabet& alphabet) {
  std::vector<Sequence> out;
  out.reserve(dialogs.size());
  for (const auto& d : dialogs) out.push_back(encode_for_eval(alphabet, act_sequence(d), d.dialog_id));
  return out;
}

std::vector<Sequence> strategy_sequences(std::span<const AnnotatedDialog> dialogs,
                                         const Alphabet& alphabet) {
  std::vector<Sequence> out;
  out.reserve(dialogs.size());
  for (const auto& d : dialogs)
    out.push_back(encode_for_eval(alphabet, strategy_sequence(d), d.dialog_id));
  return out;
}

double next_act_accuracy(const Fst& fst, std::span<const AnnotatedDialog> test) {
  if (prediction_positions(test) == 0)
    throw EvalError("next-act accuracy is undefined on an empty test set");
  std::map<std::string, std::vector<SymbolId>, std::less<>> masks;
  std::size_t correct = 0, total = 0;
  for (const auto& d : test) {
    const Sequence ids = encode_for_eval(fst.alphabet(), act_sequence(d), d.dialog_id);
    StateId s = fst.start_state();
    for (std::size_t t = 1; t < ids.size(); ++t) {
      s = fst.next(s, ids[t - 1]);
      const std::string& role = d.turns[t].turn.role;
      auto it = masks.find(role);
      if (it == masks.end()) it = masks.emplace(role, role_mask(fst.alphabet(), role, false)).first;
      correct += predict_next(fst, s, it->second).top() == ids[t];
      ++total;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

StrategyRule default_strategy_rule(std::span<const AnnotatedDialog> train) {
  std::size_t positions = 0, labels = 0;
  for (const auto& d : train)
    for (std::size_t t = 1; t < d.turns.size(); ++t) {
      ++positions;
      labels += d.turns[t].strategies.size();
    }
  if (positions == 0) return StrategyRule::top_k(1);
  const double mean = static_cast<double>(labels) / static_cast<double>(positions);
  return StrategyRule::top_k(static_cast<std::size_t>(std::llround(mean)));
}

LabelSet predict_strategy_set(const Fst& fst, const Trace& trace, const StrategyRule& rule,
                              std::string_view role) {
  const bool consistent =
      !trace.states.empty() && trace.states.size() == trace.embeddings.size() &&
      trace.states.front() == fst.start_state() &&
      std::all_of(trace.states.begin(), trace.states.end(),
                  [&](StateId s) { return s < fst.num_states(); }) &&
      trace.embeddings.back() == emission_pdf(fst, trace.final_state());
  if (!consistent) throw EvalError("trace was not produced by this automaton");

  const auto mask = role_mask(fst.alphabet(), role, true);
  LabelSet out;
  if (mask.empty()) return out;
  const auto& probs = trace.embeddings.back().probs;
  double mass = 0.0;
  for (SymbolId x : mask) mass += probs[x];
  std::vector<std::pair<SymbolId, double>> ranked;
  for (SymbolId x : mask)
    ranked.emplace_back(x, mass > 0.0 ? probs[x] / mass : 1.0 / static_cast<double>(mask.size()));
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    return l.first < r.first;
  });
  const double tau =
      std::isnan(rule.tau) ? 0.5 / static_cast<double>(mask.size()) : rule.tau;
  const std::size_t prefix_len = role.size() + 1;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const bool take = rule.kind == StrategyRule::Kind::kTopK ? i < rule.k
                                                             : ranked[i].second >= tau;
    if (take) out.insert(fst.alphabet().name(ranked[i].first).substr(prefix_len));
  }
  return out;
}

StrategyScores strategy_metrics(std::span<const LabelSet> predictions,
                                std::span<const LabelSet> gold,
                                std::optional<std::span<const std::string>> inventory) {
  if (predictions.size() != gold.size())
    throw EvalError("strategy_metrics: " + std::to_string(predictions.size()) +
                    " predictions vs " + std::to_string(gold.size()) + " gold sets");
  StrategyScores scores;
  if (predictions.empty()) throw EvalError("strategy_metrics: no positions to score");
  std::size_t exact = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) exact += predictions[i] == gold[i];
  scores.exact_accuracy = static_cast<double>(exact) / static_cast<double>(gold.size());

  LabelSet labels;
  if (inventory) {
    labels.insert(inventory->begin(), inventory->end());
  } else {
    for (const auto& s : predictions) labels.insert(s.begin(), s.end());
    for (const auto& s : gold) labels.insert(s.begin(), s.end());
  }
  if (labels.empty()) {
    scores.macro_f1 = 1.0;
    return scores;
  }
  double f1_sum = 0.0;
  for (const auto& label : labels) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool p = predictions[i].contains(label);
      const bool g = gold[i].contains(label);
      tp += p && g;
      fp += p && !g;
      fn += !p && g;
    }
    const std::size_t denom = 2 * tp + fp + fn;
    f1_sum += denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  scores.macro_f1 = f1_sum / static_cast<double>(labels.size());
  return scores;
}

LabelSet strategy_set(const AnnotatedTurn& turn) {
  return LabelSet(turn.strategies.begin(), turn.strategies.end());
}

HistoryKey history_key(const AnnotatedDialog& dialog, std::size_t position) {
  if (position == 0 || position >= dialog.turns.size() + 1)
    throw EvalError("history key needs a position in [1, turns]");
  auto sig = [&](std::size_t i) {
    const AnnotatedTurn& t = dialog.turns[i];
    return TurnSignature{t.turn.role, t.act, strategy_set(t)};
  };
  HistoryKey key;
  key.previous = sig(position - 1);
  if (position >= 2) key.before_previous = sig(position - 2);
  return key;
}

LabelSet expand_ground_truth(std::span<const AnnotatedDialog> train, const HistoryKey& key,
                             const LabelSet& own_gold) {
  LabelSet out = own_gold;
  for (const auto& d : train)
    for (std::size_t t = 1; t < d.turns.size(); ++t)
      if (history_key(d, t) == key) {
        const auto next = strategy_set(d.turns[t]);
        out.insert(next.begin(), next.end());
      }
  return out;
}

ExpansionIndex::ExpansionIndex(std::span<const AnnotatedDialog> train) {
  for (const auto& d : train)
    for (std::size_t t = 1; t < d.turns.size(); ++t) {
      const auto next = strategy_set(d.turns[t]);
      unions_[history_key(d, t)].insert(next.begin(), next.end());
    }
}

LabelSet ExpansionIndex::expand(const HistoryKey& key, const LabelSet& own_gold) const {
  LabelSet out = own_gold;
  if (auto it = unions_.find(key); it != unions_.end()) out.insert(it->second.begin(), it->second.end());
  return out;
}

bool bigram_correct(const LabelSet& predicted, const LabelSet& gold, const LabelSet& expanded,
                    BigramMatch match) {
  if (predicted.empty()) return gold.empty();
  if (match == BigramMatch::kExact) return predicted == expanded;
  return std::includes(expanded.begin(), expanded.end(), predicted.begin(), predicted.end());
}

double subset_accuracy(std::span<const LabelSet> predictions, std::span<const LabelSet> gold) {
  return bigram_accuracy_from_sets(predictions, gold, gold, BigramMatch::kSubset);
}

double bigram_accuracy_from_sets(std::span<const LabelSet> predictions,
                                 std::span<const LabelSet> gold,
                                 std::span<const LabelSet> expanded, BigramMatch match) {
  if (predictions.size() != gold.size() || gold.size() != expanded.size())
    throw EvalError("bigram accuracy: input lengths differ");
  if (predictions.empty()) throw EvalError("bigram accuracy is undefined without positions");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i)
    correct += bigram_correct(predictions[i], gold[i], expanded[i], match);
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

StrategyPredictions predict_strategies(const Fst& fst, std::span<const AnnotatedDialog> test,
                                       const StrategyRule& rule) {
  StrategyPredictions out;
  for (const auto& d : test) {
    const Sequence ids = encode_for_eval(fst.alphabet(), strategy_sequence(d), d.dialog_id);
    const Trace full = traverse(fst, ids);
    // Symbols per turn: max(1, |strategies|) plus the end-of-turn marker.
    std::size_t consumed = 0;
    for (std::size_t t = 0; t + 1 < d.turns.size(); ++t) {
      consumed += std::max<std::size_t>(1, d.turns[t].strategies.size()) + 1;
      Trace prefix;
      prefix.states.assign(full.states.begin(), full.states.begin() + consumed + 1);
      prefix.embeddings.assign(full.embeddings.begin(), full.embeddings.begin() + consumed + 1);
      out.predicted.push_back(predict_strategy_set(fst, prefix, rule, d.turns[t + 1].turn.role));
      out.gold.push_back(strategy_set(d.turns[t + 1]));
      out.keys.push_back(history_key(d, t + 1));
    }
  }
  return out;
}

double bigram_accuracy(const Fst& fst, std::span<const AnnotatedDialog> train,
                       std::span<const AnnotatedDialog> test, const StrategyRule& rule,
                       BigramMatch match) {
  const auto preds = predict_strategies(fst, test, rule);
  const ExpansionIndex index(train);
  std::vector<LabelSet> expanded;
  expanded.reserve(preds.keys.size());
  for (std::size_t i = 0; i < preds.keys.size(); ++i)
    expanded.push_back(index.expand(preds.keys[i], preds.gold[i]));
  return bigram_accuracy_from_sets(preds.predicted, preds.gold, expanded, match);
}

namespace {

std::optional<double> safe_perplexity(const Fst& fst, std::span<const Sequence> test) {
  try {
    return perplexity(fst, test);
  } catch (const FstError&) {
    return std::nullopt;
  }
}

void fill_act_metrics(EvalRow& row, const Fst& model, std::span<const AnnotatedDialog> test) {
  row.next_act_accuracy = next_act_accuracy(model, test);
  row.act_perplexity = safe_perplexity(model, act_sequences(test, model.alphabet()));
}

void fill_strategy_metrics(EvalRow& row, const Fst& model, std::span<const AnnotatedDialog> test,
                           const ExpansionIndex& index, const StrategyRule& rule,
                           BigramMatch match) {
  const auto preds = predict_strategies(model, test, rule);
  const auto scores = strategy_metrics(preds.predicted, preds.gold);
  row.strategy_exact_accuracy = scores.exact_accuracy;
  row.strategy_macro_f1 = scores.macro_f1;
  std::vector<LabelSet> expanded;
  for (std::size_t i = 0; i < preds.keys.size(); ++i)
    expanded.push_back(index.expand(preds.keys[i], preds.gold[i]));
  row.bigram_accuracy = bigram_accuracy_from_sets(preds.predicted, preds.gold, expanded, match);
  row.strategy_perplexity = safe_perplexity(model, strategy_sequences(test, model.alphabet()));
}

}  // namespace

EvalReport compare_report(const Fst* act_model, const Fst* strategy_model,
                          std::span<const AnnotatedDialog> train,
                          std::span<const AnnotatedDialog> test, const EvalOptions& options) {
  if (!act_model && !strategy_model) throw EvalError("compare_report needs at least one model");
  if (prediction_positions(test) == 0) throw EvalError("test set has no prediction positions");
  EvalReport report;
  report.test_dialogs = test.size();
  report.strategy_rule = options.strategy_rule.value_or(default_strategy_rule(train));
  report.bigram_match = options.bigram_match;
  const ExpansionIndex index(train);

  auto score = [&](const std::string& name, const Fst* act, const Fst* strategy) {
    EvalRow row;
    row.model = name;
    if (act) fill_act_metrics(row, *act, test);
    if (strategy)
      fill_strategy_metrics(row, *strategy, test, index, report.strategy_rule,
                            options.bigram_match);
    report.rows.push_back(std::move(row));
  };
  score("fst", act_model, strategy_model);

  for (BaselineKind kind : options.baselines) {
    std::optional<Fst> act, strategy;
    if (act_model)
      act = baseline_predictor(kind, act_model->alphabet(),
                               act_sequences(train, act_model->alphabet()),
                               act_model->smoothing_lambda());
    if (strategy_model)
      strategy = baseline_predictor(kind, strategy_model->alphabet(),
                                    strategy_sequences(train, strategy_model->alphabet()),
                                    strategy_model->smoothing_lambda());
    score(std::string(to_string(kind)), act ? &*act : nullptr, strategy ? &*strategy : nullptr);
  }
  return report;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string opt_text(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"model", r.model},
                    {"next_act_accuracy", opt_json(r.next_act_accuracy)},
                    {"act_perplexity", opt_json(r.act_perplexity)},
                    {"strategy_exact_accuracy", opt_json(r.strategy_exact_accuracy)},
                    {"strategy_macro_f1", opt_json(r.strategy_macro_f1)},
                    {"bigram_accuracy", opt_json(r.bigram_accuracy)},
                    {"strategy_perplexity", opt_json(r.strategy_perplexity)}});
  }
  nlohmann::json rule = {
      {"kind", report.strategy_rule.kind == StrategyRule::Kind::kTopK ? "top_k" : "threshold"}};
  if (report.strategy_rule.kind == StrategyRule::Kind::kTopK)
    rule["k"] = report.strategy_rule.k;
  else if (std::isnan(report.strategy_rule.tau))
    rule["tau"] = "auto";
  else
    rule["tau"] = report.strategy_rule.tau;
  nlohmann::json j = {
      {"test_dialogs", report.test_dialogs},
      {"strategy_rule", rule},
      {"bigram_match", report.bigram_match == BigramMatch::kSubset ? "subset" : "exact"},
      {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string report_to_text(const EvalReport& report) {
  const std::vector<std::string> header = {"Model", "Act.acc", "Act.PPL", "S.acc",
                                           "S.F1",  "Bi.acc",  "S.PPL"};
  std::vector<std::vector<std::string>> cells = {header};
  for (const auto& r : report.rows)
    cells.push_back({r.model, opt_text(r.next_act_accuracy), opt_text(r.act_perplexity),
                     opt_text(r.strategy_exact_accuracy), opt_text(r.strategy_macro_f1),
                     opt_text(r.bigram_accuracy), opt_text(r.strategy_perplexity)});
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      if (c) out << "  ";
      if (c == 0)
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[r][c];
      else
        out << std::right << std::setw(static_cast<int>(width[c])) << cells[r][c];
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace dialogfst
