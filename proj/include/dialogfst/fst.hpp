#ifndef DIALOGFST_FST_HPP
#define DIALOGFST_FST_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dialogfst/alphabet.hpp"

namespace dialogfst {

using StateId = std::uint32_t;
using Count = std::uint64_t;

/// Where a state came from: the state it was split off and the incoming
/// symbol it was split on. `source` is set when only the single edge
/// (source, symbol) was redirected rather than every `symbol` edge.
struct Lineage {
  StateId parent = 0;
  SymbolId symbol = 0;
  std::optional<StateId> source;

  bool operator==(const Lineage&) const = default;
};

/// Next-symbol distribution at a state. Entries lie in [0,1] and sum to 1.
struct StateEmbedding {
  std::vector<double> probs;

  bool operator==(const StateEmbedding&) const = default;
};

/// Deterministic, total probabilistic automaton over an alphabet. Each state
/// keeps next-symbol counts; its smoothed next-symbol distribution is the
/// state embedding.
class Fst {
 public:
  /// Single ergodic state: every symbol loops back to state 0, counts zero.
  /// Throws FstError on an empty alphabet or negative lambda.
  Fst(Alphabet alphabet, double smoothing_lambda);

  /// Assembles an automaton from raw tables (row-major state x symbol).
  /// Validates sizes, ranges and lambda; throws FstError.
  static Fst from_parts(Alphabet alphabet, std::size_t num_states, StateId start_state,
                        double smoothing_lambda, std::vector<StateId> delta,
                        std::vector<Count> counts, std::vector<std::optional<Lineage>> lineage);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_symbols() const { return alphabet_.size(); }
  StateId start_state() const { return start_state_; }
  double smoothing_lambda() const { return lambda_; }

  /// Unchecked transition lookup; see inference step() for the checked one.
  StateId next(StateId state, SymbolId symbol) const {
    return delta_[static_cast<std::size_t>(state) * alphabet_.size() + symbol];
  }
  Count count(StateId state, SymbolId symbol) const {
    return counts_[static_cast<std::size_t>(state) * alphabet_.size() + symbol];
  }
  std::span<const Count> count_row(StateId state) const;
  Count total_count(StateId state) const;

  std::span<const StateId> delta() const { return delta_; }
  std::span<const Count> counts() const { return counts_; }
  const std::vector<std::optional<Lineage>>& lineage() const { return lineage_; }

  /// False after a split until counts are re-estimated.
  bool counts_current() const { return counts_current_; }

  void set_smoothing_lambda(double lambda);

  /// Throws FstError when the state id is out of range.
  void check_state(StateId state) const;
  void check_symbol(SymbolId symbol) const;

  bool operator==(const Fst& other) const;

 private:
  friend void run_counts_into(Fst&, std::vector<Count>);
  friend class FstEditor;

  Fst() = default;

  Alphabet alphabet_;
  std::size_t num_states_ = 0;
  StateId start_state_ = 0;
  double lambda_ = 0.0;
  std::vector<StateId> delta_;
  std::vector<Count> counts_;
  std::vector<std::optional<Lineage>> lineage_;
  bool counts_current_ = true;
};

/// Replaces the counts table wholesale and marks counts current.
void run_counts_into(Fst& fst, std::vector<Count> counts);

/// Structural mutation used by the learner.
class FstEditor {
 public:
  explicit FstEditor(Fst& fst) : fst_(fst) {}

  /// Appends a state whose outgoing row copies `copy_from`; counts are
  /// invalidated.
  StateId add_state(StateId copy_from, Lineage lineage);
  void set_next(StateId state, SymbolId symbol, StateId target);

 private:
  Fst& fst_;
};

/// Smoothed distribution (c + lambda) / (total + lambda * |alphabet|). A state
/// with no counts and lambda = 0 yields the uniform distribution.
StateEmbedding emission_pdf(const Fst& fst, StateId state);

/// Base-2 entropy of the unsmoothed count distribution; 0 for an empty state.
double state_entropy(const Fst& fst, StateId state);

/// Base-2 entropy of a count vector; 0 when all counts are zero.
double count_entropy(std::span<const Count> counts);

/// Checks that delta is total and deterministic with in-range targets, and
/// that every embedding is a proper distribution. Returns an empty string
/// when well-formed, otherwise a description of the first violation.
std::string check_invariants(const Fst& fst);

}  // namespace dialogfst

#endif  // DIALOGFST_FST_HPP
