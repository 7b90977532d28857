#ifndef DIALOGFST_SRC_KERNELS_HPP
#define DIALOGFST_SRC_KERNELS_HPP

// Data-parallel inner loops of the learner. The *_serial functions are the
// reference implementations; the *_parallel ones must return identical
// results. Sequences are assumed validated against the alphabet.

#include <span>
#include <vector>

#include "dialogfst/learn.hpp"

namespace dialogfst::kernels {

std::vector<Count> count_serial(const Fst& fst, std::span<const Sequence> sequences);
std::vector<Count> count_parallel(const Fst& fst, std::span<const Sequence> sequences);

EdgeTable edge_table_serial(const Fst& fst, std::span<const Sequence> sequences);
EdgeTable edge_table_parallel(const Fst& fst, std::span<const Sequence> sequences);

/// Incoming edges per target state as (symbol, source) pairs sorted
/// ascending. The start pseudo-edge is not listed.
std::vector<std::vector<std::pair<SymbolId, StateId>>> incoming_edges(const Fst& fst);

/// Candidates of one target state in canonical order.
std::vector<SplitCandidate> score_target(
    const Fst& fst, const EdgeTable& table, const TrainConfig& config, StateId target,
    std::span<const std::pair<SymbolId, StateId>> incoming);

std::vector<SplitCandidate> score_serial(const Fst& fst, const EdgeTable& table,
                                         const TrainConfig& config);
std::vector<SplitCandidate> score_parallel(const Fst& fst, const EdgeTable& table,
                                           const TrainConfig& config);

/// Per-state counts implied by an edge table.
std::vector<Count> counts_from_table(const Fst& fst, const EdgeTable& table);

}  // namespace dialogfst::kernels

#endif  // DIALOGFST_SRC_KERNELS_HPP
