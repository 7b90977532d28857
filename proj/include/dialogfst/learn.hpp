#ifndef DIALOGFST_LEARN_HPP
#define DIALOGFST_LEARN_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dialogfst/fst.hpp"

namespace dialogfst {

/// Which visits a split may peel off a state.
///   kSymbol: every visit entering through any edge labelled with the symbol.
///   kEdge:   kSymbol candidates plus, per single incoming edge
///            (source, symbol), the visits entering through that edge only.
/// kSymbol keeps every transition column constant, so the automaton can never
/// condition on more than the last symbol; kEdge lifts that limit.
enum class SplitScope { kSymbol, kEdge };

/// Serial reference kernels or their OpenMP counterparts. Both produce
/// identical results.
enum class Exec { kSerial, kParallel };

std::string_view to_string(SplitScope scope);
SplitScope parse_split_scope(std::string_view name);

struct TrainConfig {
  std::size_t target_states = 1;
  Count min_child_support = 5;
  double min_entropy_gain = 0.01;
  double smoothing_lambda = 0.1;
  SplitScope scope = SplitScope::kEdge;
  Exec exec = Exec::kParallel;

  /// Throws FstError when target_states < 1, a threshold is negative, or
  /// lambda is negative.
  void validate() const;
};

/// Gains at or below this are treated as no gain at all, so a split never
/// leaves the objective unchanged.
inline constexpr double kMinPositiveGain = 1e-12;
/// Weighted entropies closer than this are ties, resolved by lowest
/// (state, symbol, source) with symbol-wide candidates before single edges.
inline constexpr double kEntropyTieTolerance = 1e-12;

struct SplitCandidate {
  StateId target_state = 0;
  SymbolId incoming_symbol = 0;
  /// Unset for a symbol-wide split.
  std::optional<StateId> source_state;
  double weighted_child_entropy = 0.0;
  double parent_entropy = 0.0;
  /// Emission counts of the peeled-off child and of the remaining visits.
  Count child_support = 0;
  Count rest_support = 0;
  /// Automaton size the candidate was computed against; used to reject stale
  /// candidates.
  std::size_t fst_num_states = 0;

  double gain() const { return parent_entropy - weighted_child_entropy; }
};

/// Recomputes counts: from the start state, count (state, x_t) then follow
/// delta. Throws FstError naming the sequence index on an out-of-alphabet id.
void run_counts(Fst& fst, std::span<const Sequence> sequences, Exec exec = Exec::kParallel);

/// Next-symbol counts per incoming edge. Row e = s * |A| + a holds emissions
/// at delta(s, a) for visits entered through (s, a); the final row holds
/// emissions at sequence-initial visits of the start state.
struct EdgeTable {
  std::size_t num_states = 0;
  std::size_t num_symbols = 0;
  std::vector<Count> cells;

  std::size_t start_row() const { return num_states * num_symbols; }
  std::span<const Count> row(std::size_t edge) const {
    return {cells.data() + edge * num_symbols, num_symbols};
  }
};

EdgeTable accumulate_edge_table(const Fst& fst, std::span<const Sequence> sequences,
                                Exec exec = Exec::kParallel);

/// Every admissible candidate, scored, in canonical (state, symbol, source)
/// order with the symbol-wide candidate first.
std::vector<SplitCandidate> score_candidates(const Fst& fst, const EdgeTable& table,
                                             const TrainConfig& config);

/// The admissible candidate of minimum count-weighted child entropy, or
/// nullopt. Admissible: both parts have emission support >= max(1,
/// min_child_support), and gain >= min_entropy_gain and > kMinPositiveGain.
std::optional<SplitCandidate> best_split(const Fst& fst, std::span<const Sequence> sequences,
                                         const TrainConfig& config);

/// Allocates the child state, redirects the candidate's edges into it and
/// copies the parent's (redirected) outgoing row. The start state is
/// unchanged. Counts are invalidated. Throws FstError on a stale candidate.
void apply_split(Fst& fst, const SplitCandidate& candidate);

struct TrainResult {
  Fst fst;
  /// Accepted splits in order.
  std::vector<SplitCandidate> history;
};

/// Greedy splitting from one ergodic state until target_states is reached or
/// no admissible split remains. Counts are current on return.
TrainResult train_fst_logged(std::span<const Sequence> sequences, const Alphabet& alphabet,
                             const TrainConfig& config);
Fst train_fst(std::span<const Sequence> sequences, const Alphabet& alphabet,
              const TrainConfig& config);

}  // namespace dialogfst

#endif  // DIALOGFST_LEARN_HPP
