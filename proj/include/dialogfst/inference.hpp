#ifndef DIALOGFST_INFERENCE_HPP
#define DIALOGFST_INFERENCE_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialogfst/fst.hpp"

namespace dialogfst {

/// States visited while reading a sequence, beginning with the start state,
/// and the embedding of each.
struct Trace {
  std::vector<StateId> states;
  std::vector<StateEmbedding> embeddings;

  StateId final_state() const { return states.back(); }
  bool operator==(const Trace&) const = default;
};

struct Prediction {
  /// Sorted by probability descending, ties by symbol id ascending.
  std::vector<std::pair<SymbolId, double>> ranked;

  SymbolId top() const { return ranked.front().first; }
};

/// Checked transition. Throws FstError on invalid ids.
StateId step(const Fst& fst, StateId state, SymbolId symbol);

/// Throws FstError naming the position of an invalid id.
Trace traverse(const Fst& fst, std::span<const SymbolId> sequence);

/// State reached after reading the sequence, without building embeddings.
StateId final_state(const Fst& fst, std::span<const SymbolId> sequence);

/// The state's embedding ranked. With a mask, restricted to the masked
/// symbols and renormalized; an empty mask throws FstError. If the masked mass
/// is zero the masked symbols are ranked uniformly.
Prediction predict_next(const Fst& fst, StateId state);
Prediction predict_next(const Fst& fst, StateId state, std::span<const SymbolId> mask);

/// Sum of log2 probabilities along the sequence. Throws FstError when an event
/// has probability zero (lambda = 0 and an unseen transition).
double sequence_logprob(const Fst& fst, std::span<const SymbolId> sequence);

/// 2^(-total logprob / total tokens). Throws FstError when there are no tokens.
double perplexity(const Fst& fst, std::span<const Sequence> sequences);

/// Average negative log2 probability per token (log2 of perplexity).
double cross_entropy(const Fst& fst, std::span<const Sequence> sequences);

struct DotOptions {
  std::size_t top_k = 3;
  double edge_threshold = 0.05;
  std::string graph_name = "fst";
};

/// Graphviz digraph: one node per state labelled with its id and top-k
/// emissions, one edge per (state, symbol) whose probability is at least the
/// threshold, labelled "symbol, p". Output order is deterministic. Throws
/// FstError when top_k is zero.
std::string export_dot(const Fst& fst, const DotOptions& options = {});

}  // namespace dialogfst

#endif  // DIALOGFST_INFERENCE_HPP
