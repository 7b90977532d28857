#include "kernels.hpp"

#include <algorithm>
#include <numeric>

namespace dialogfst::kernels {

std::vector<Count> count_serial(const Fst& fst, std::span<const Sequence> sequences) {
  const std::size_t a = fst.num_symbols();
  std::vector<Count> counts(fst.num_states() * a, 0);
  for (const Sequence& seq : sequences) {
    StateId s = fst.start_state();
    for (SymbolId x : seq) {
      ++counts[static_cast<std::size_t>(s) * a + x];
      s = fst.next(s, x);
    }
  }
  return counts;
}

EdgeTable edge_table_serial(const Fst& fst, std::span<const Sequence> sequences) {
  const std::size_t a = fst.num_symbols();
  EdgeTable table{fst.num_states(), a, {}};
  table.cells.assign((table.start_row() + 1) * a, 0);
  for (const Sequence& seq : sequences) {
    std::size_t edge = table.start_row();
    StateId s = fst.start_state();
    for (SymbolId x : seq) {
      ++table.cells[edge * a + x];
      edge = static_cast<std::size_t>(s) * a + x;
      s = fst.next(s, x);
    }
  }
  return table;
}

std::vector<std::vector<std::pair<SymbolId, StateId>>> incoming_edges(const Fst& fst) {
  std::vector<std::vector<std::pair<SymbolId, StateId>>> in(fst.num_states());
  for (SymbolId x = 0; x < fst.num_symbols(); ++x)
    for (StateId s = 0; s < fst.num_states(); ++s) in[fst.next(s, x)].emplace_back(x, s);
  return in;
}

namespace {

Count sum(std::span<const Count> v) { return std::accumulate(v.begin(), v.end(), Count{0}); }

bool admissible(const SplitCandidate& c, const TrainConfig& config) {
  const Count floor = std::max<Count>(1, config.min_child_support);
  const double gain = c.gain();
  return c.child_support >= floor && c.rest_support >= floor &&
         gain >= config.min_entropy_gain && gain > kMinPositiveGain;
}

}  // namespace

std::vector<SplitCandidate> score_target(
    const Fst& fst, const EdgeTable& table, const TrainConfig& config, StateId target,
    std::span<const std::pair<SymbolId, StateId>> incoming) {
  const std::size_t a = fst.num_symbols();
  std::vector<Count> parent(a, 0);
  auto add_row = [&](std::vector<Count>& into, std::size_t edge) {
    const auto row = table.row(edge);
    for (std::size_t x = 0; x < a; ++x) into[x] += row[x];
  };
  for (const auto& [x, s] : incoming) add_row(parent, static_cast<std::size_t>(s) * a + x);
  if (target == fst.start_state()) add_row(parent, table.start_row());
  const Count n = sum(parent);
  std::vector<SplitCandidate> out;
  if (n == 0) return out;
  const double parent_h = count_entropy(parent);

  std::vector<Count> child(a), rest(a);
  auto score = [&](SymbolId symbol, std::optional<StateId> source) {
    for (std::size_t x = 0; x < a; ++x) rest[x] = parent[x] - child[x];
    SplitCandidate c;
    c.target_state = target;
    c.incoming_symbol = symbol;
    c.source_state = source;
    c.parent_entropy = parent_h;
    c.child_support = sum(child);
    c.rest_support = n - c.child_support;
    c.fst_num_states = fst.num_states();
    c.weighted_child_entropy =
        (static_cast<double>(c.child_support) * count_entropy(child) +
         static_cast<double>(c.rest_support) * count_entropy(rest)) /
        static_cast<double>(n);
    if (admissible(c, config)) out.push_back(c);
  };

  for (std::size_t i = 0; i < incoming.size();) {
    const SymbolId symbol = incoming[i].first;
    std::size_t j = i;
    while (j < incoming.size() && incoming[j].first == symbol) ++j;
    std::fill(child.begin(), child.end(), 0);
    for (std::size_t k = i; k < j; ++k)
      add_row(child, static_cast<std::size_t>(incoming[k].second) * a + symbol);
    score(symbol, std::nullopt);
    if (config.scope == SplitScope::kEdge) {
      for (std::size_t k = i; k < j; ++k) {
        std::fill(child.begin(), child.end(), 0);
        add_row(child, static_cast<std::size_t>(incoming[k].second) * a + symbol);
        score(symbol, incoming[k].second);
      }
    }
    i = j;
  }
  return out;
}

std::vector<SplitCandidate> score_serial(const Fst& fst, const EdgeTable& table,
                                         const TrainConfig& config) {
  const auto in = incoming_edges(fst);
  std::vector<SplitCandidate> out;
  for (StateId t = 0; t < fst.num_states(); ++t) {
    auto part = score_target(fst, table, config, t, in[t]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Count> counts_from_table(const Fst& fst, const EdgeTable& table) {
  const std::size_t a = fst.num_symbols();
  std::vector<Count> counts(fst.num_states() * a, 0);
  for (StateId s = 0; s < fst.num_states(); ++s) {
    for (SymbolId e = 0; e < a; ++e) {
      const StateId t = fst.next(s, e);
      const auto row = table.row(static_cast<std::size_t>(s) * a + e);
      for (std::size_t x = 0; x < a; ++x) counts[static_cast<std::size_t>(t) * a + x] += row[x];
    }
  }
  const auto start = table.row(table.start_row());
  for (std::size_t x = 0; x < a; ++x)
    counts[static_cast<std::size_t>(fst.start_state()) * a + x] += start[x];
  return counts;
}

}  // namespace dialogfst::kernels
