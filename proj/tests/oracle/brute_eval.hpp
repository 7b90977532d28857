// Direct next-symbol accuracy computations used to cross-check the library's
// evaluation path. Prefix states are recomputed from scratch at every
// position and emission counts are recounted from the training corpus.
#ifndef DIALOGFST_TESTS_BRUTE_EVAL_HPP
#define DIALOGFST_TESTS_BRUTE_EVAL_HPP

#include <map>
#include <span>
#include <vector>

#include "brute_split.hpp"

namespace oracle {

inline SymbolId argmax_count(const std::vector<Count>& row) {
  SymbolId best = 0;
  for (SymbolId x = 1; x < row.size(); ++x)
    if (row[x] > row[best]) best = x;
  return best;
}

/// Argmax of (c + lambda) / (n + lambda |A|) is the argmax of the raw counts
/// (lowest id on ties), including the all-zero uniform case.
inline double brute_fst_accuracy(const dialogfst::Fst& fst, std::span<const Sequence> train,
                                 std::span<const Sequence> test) {
  const Table t = table_of(fst);
  const auto counts = replay(t, train);
  std::size_t hit = 0, total = 0;
  for (const Sequence& seq : test) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      StateId s = t.start;
      for (std::size_t j = 0; j < i; ++j) s = t.next[s][seq[j]];
      hit += argmax_count(counts[s]) == seq[i];
      ++total;
    }
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

/// Accuracy of an order-n count model (n = 0 unigram, n = 1 bigram). The
/// context of position i is the previous n symbols, padded at the start.
inline double brute_ngram_accuracy(std::size_t order, std::size_t symbols,
                                   std::span<const Sequence> train,
                                   std::span<const Sequence> test) {
  auto context = [&](const Sequence& seq, std::size_t i) {
    std::vector<long> c;
    for (std::size_t k = order; k > 0; --k)
      c.push_back(i >= k ? static_cast<long>(seq[i - k]) : -1L);
    return c;
  };
  std::map<std::vector<long>, std::vector<Count>> table;
  for (const Sequence& seq : train)
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto& row = table[context(seq, i)];
      row.resize(symbols, 0);
      row[seq[i]] += 1;
    }
  std::size_t hit = 0, total = 0;
  for (const Sequence& seq : test)
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto it = table.find(context(seq, i));
      const SymbolId guess = it == table.end() ? 0 : argmax_count(it->second);
      hit += guess == seq[i];
      ++total;
    }
  return static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace oracle

#endif  // DIALOGFST_TESTS_BRUTE_EVAL_HPP
