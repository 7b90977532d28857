#include "kernels.hpp"

#include <cstddef>

namespace dialogfst::kernels {

// Thread-private tables are summed after the walk; integer addition keeps
// the result identical to the serial kernel regardless of scheduling.

std::vector<Count> count_parallel(const Fst& fst, std::span<const Sequence> sequences) {
  const std::size_t a = fst.num_symbols();
  const std::size_t cells = fst.num_states() * a;
  std::vector<Count> counts(cells, 0);
  const auto n = static_cast<std::ptrdiff_t>(sequences.size());
#pragma omp parallel
  {
    std::vector<Count> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      StateId s = fst.start_state();
      for (SymbolId x : sequences[static_cast<std::size_t>(i)]) {
        ++local[static_cast<std::size_t>(s) * a + x];
        s = fst.next(s, x);
      }
    }
#pragma omp critical(dialogfst_count_reduce)
    for (std::size_t c = 0; c < cells; ++c) counts[c] += local[c];
  }
  return counts;
}

EdgeTable edge_table_parallel(const Fst& fst, std::span<const Sequence> sequences) {
  const std::size_t a = fst.num_symbols();
  EdgeTable table{fst.num_states(), a, {}};
  const std::size_t cells = (table.start_row() + 1) * a;
  table.cells.assign(cells, 0);
  const auto n = static_cast<std::ptrdiff_t>(sequences.size());
#pragma omp parallel
  {
    std::vector<Count> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      std::size_t edge = table.start_row();
      StateId s = fst.start_state();
      for (SymbolId x : sequences[static_cast<std::size_t>(i)]) {
        ++local[edge * a + x];
        edge = static_cast<std::size_t>(s) * a + x;
        s = fst.next(s, x);
      }
    }
#pragma omp critical(dialogfst_edge_reduce)
    for (std::size_t c = 0; c < cells; ++c) table.cells[c] += local[c];
  }
  return table;
}

std::vector<SplitCandidate> score_parallel(const Fst& fst, const EdgeTable& table,
                                           const TrainConfig& config) {
  const auto in = incoming_edges(fst);
  std::vector<std::vector<SplitCandidate>> per_target(fst.num_states());
  const auto n = static_cast<std::ptrdiff_t>(fst.num_states());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    per_target[static_cast<std::size_t>(t)] =
        score_target(fst, table, config, static_cast<StateId>(t), in[static_cast<std::size_t>(t)]);
  }
  // Concatenating in state order reproduces the serial candidate order.
  std::vector<SplitCandidate> out;
  for (auto& part : per_target) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace dialogfst::kernels
