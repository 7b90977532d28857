#include "dialogfst/learn.hpp"

#include "dialogfst/error.hpp"
#include "kernels.hpp"

namespace dialogfst {

std::string_view to_string(SplitScope scope) {
  return scope == SplitScope::kSymbol ? "symbol" : "edge";
}

SplitScope parse_split_scope(std::string_view name) {
  if (name == "symbol") return SplitScope::kSymbol;
  if (name == "edge") return SplitScope::kEdge;
  throw FstError("unknown split scope '" + std::string(name) + "' (expected symbol or edge)");
}

void TrainConfig::validate() const {
  if (target_states < 1) throw FstError("target number of states K must be at least 1");
  if (!(min_entropy_gain >= 0.0)) throw FstError("min_entropy_gain must be non-negative");
  if (!(smoothing_lambda >= 0.0)) throw FstError("smoothing lambda must be non-negative");
}

namespace {

void validate_sequences(const Fst& fst, std::span<const Sequence> sequences) {
  const std::size_t a = fst.num_symbols();
  for (std::size_t i = 0; i < sequences.size(); ++i)
    for (SymbolId x : sequences[i])
      if (x >= a)
        throw FstError("sequence " + std::to_string(i) + " contains symbol id " +
                       std::to_string(x) + " outside the alphabet of size " + std::to_string(a));
}

EdgeTable edge_table(const Fst& fst, std::span<const Sequence> sequences, Exec exec) {
  return exec == Exec::kParallel ? kernels::edge_table_parallel(fst, sequences)
                                 : kernels::edge_table_serial(fst, sequences);
}

std::optional<SplitCandidate> pick_best(const std::vector<SplitCandidate>& candidates) {
  std::optional<SplitCandidate> best;
  for (const SplitCandidate& c : candidates) {
    if (!best || c.weighted_child_entropy < best->weighted_child_entropy - kEntropyTieTolerance)
      best = c;
  }
  return best;
}

}  // namespace

void run_counts(Fst& fst, std::span<const Sequence> sequences, Exec exec) {
  validate_sequences(fst, sequences);
  run_counts_into(fst, exec == Exec::kParallel ? kernels::count_parallel(fst, sequences)
                                               : kernels::count_serial(fst, sequences));
}

EdgeTable accumulate_edge_table(const Fst& fst, std::span<const Sequence> sequences, Exec exec) {
  validate_sequences(fst, sequences);
  return edge_table(fst, sequences, exec);
}

std::vector<SplitCandidate> score_candidates(const Fst& fst, const EdgeTable& table,
                                             const TrainConfig& config) {
  if (table.num_states != fst.num_states() || table.num_symbols != fst.num_symbols())
    throw FstError("edge table does not match the automaton");
  return config.exec == Exec::kParallel ? kernels::score_parallel(fst, table, config)
                                        : kernels::score_serial(fst, table, config);
}

std::optional<SplitCandidate> best_split(const Fst& fst, std::span<const Sequence> sequences,
                                         const TrainConfig& config) {
  const EdgeTable table = accumulate_edge_table(fst, sequences, config.exec);
  return pick_best(score_candidates(fst, table, config));
}

void apply_split(Fst& fst, const SplitCandidate& c) {
  const std::size_t n = fst.num_states();
  auto stale = [&](const std::string& why) {
    throw FstError("stale split candidate (state " + std::to_string(c.target_state) +
                   ", symbol " + std::to_string(c.incoming_symbol) + "): " + why);
  };
  if (c.fst_num_states != n) stale("automaton has changed since the candidate was scored");
  if (c.target_state >= n) stale("target state does not exist");
  if (c.incoming_symbol >= fst.num_symbols()) stale("symbol outside the alphabet");
  if (c.source_state) {
    if (*c.source_state >= n) stale("source state does not exist");
    if (fst.next(*c.source_state, c.incoming_symbol) != c.target_state)
      stale("edge no longer enters the target state");
  } else {
    bool enters = false;
    for (StateId s = 0; s < n && !enters; ++s)
      enters = fst.next(s, c.incoming_symbol) == c.target_state;
    if (!enters) stale("no edge with this symbol enters the target state");
  }

  FstEditor edit(fst);
  const StateId child =
      edit.add_state(c.target_state, Lineage{c.target_state, c.incoming_symbol, c.source_state});
  if (c.source_state) {
    edit.set_next(*c.source_state, c.incoming_symbol, child);
    // The child's row mirrors the parent's row after redirection.
    if (*c.source_state == c.target_state) edit.set_next(child, c.incoming_symbol, child);
  } else {
    for (StateId s = 0; s <= child; ++s)
      if (fst.next(s, c.incoming_symbol) == c.target_state)
        edit.set_next(s, c.incoming_symbol, child);
  }
}

TrainResult train_fst_logged(std::span<const Sequence> sequences, const Alphabet& alphabet,
                             const TrainConfig& config) {
  config.validate();
  TrainResult result{Fst(alphabet, config.smoothing_lambda), {}};
  Fst& fst = result.fst;
  validate_sequences(fst, sequences);
  while (true) {
    // One corpus pass serves both re-estimation and candidate scoring.
    const EdgeTable table = edge_table(fst, sequences, config.exec);
    run_counts_into(fst, kernels::counts_from_table(fst, table));
    if (fst.num_states() >= config.target_states) break;
    const auto best = pick_best(score_candidates(fst, table, config));
    if (!best) break;
    apply_split(fst, *best);
    result.history.push_back(*best);
  }
  return result;
}

Fst train_fst(std::span<const Sequence> sequences, const Alphabet& alphabet,
              const TrainConfig& config) {
  return train_fst_logged(sequences, alphabet, config).fst;
}

}  // namespace dialogfst
