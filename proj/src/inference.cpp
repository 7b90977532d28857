#include "dialogfst/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dialogfst/error.hpp"

namespace dialogfst {

StateId step(const Fst& fst, StateId state, SymbolId symbol) {
  fst.check_state(state);
  fst.check_symbol(symbol);
  return fst.next(state, symbol);
}

namespace {

void check_position(const Fst& fst, std::span<const SymbolId> sequence, std::size_t i) {
  if (sequence[i] >= fst.num_symbols())
    throw FstError("invalid symbol id " + std::to_string(sequence[i]) + " at position " +
                   std::to_string(i));
}

Prediction rank(std::vector<std::pair<SymbolId, double>> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    return l.first < r.first;
  });
  return Prediction{std::move(entries)};
}

}  // namespace

Trace traverse(const Fst& fst, std::span<const SymbolId> sequence) {
  Trace trace;
  trace.states.reserve(sequence.size() + 1);
  trace.embeddings.reserve(sequence.size() + 1);
  StateId s = fst.start_state();
  trace.states.push_back(s);
  trace.embeddings.push_back(emission_pdf(fst, s));
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    check_position(fst, sequence, i);
    s = fst.next(s, sequence[i]);
    trace.states.push_back(s);
    trace.embeddings.push_back(emission_pdf(fst, s));
  }
  return trace;
}

StateId final_state(const Fst& fst, std::span<const SymbolId> sequence) {
  StateId s = fst.start_state();
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    check_position(fst, sequence, i);
    s = fst.next(s, sequence[i]);
  }
  return s;
}

Prediction predict_next(const Fst& fst, StateId state) {
  const auto pdf = emission_pdf(fst, state);
  std::vector<std::pair<SymbolId, double>> entries;
  entries.reserve(pdf.probs.size());
  for (SymbolId x = 0; x < pdf.probs.size(); ++x) entries.emplace_back(x, pdf.probs[x]);
  return rank(std::move(entries));
}

Prediction predict_next(const Fst& fst, StateId state, std::span<const SymbolId> mask) {
  if (mask.empty()) throw FstError("prediction mask is empty");
  const auto pdf = emission_pdf(fst, state);
  std::vector<SymbolId> symbols(mask.begin(), mask.end());
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  double mass = 0.0;
  for (SymbolId x : symbols) {
    fst.check_symbol(x);
    mass += pdf.probs[x];
  }
  std::vector<std::pair<SymbolId, double>> entries;
  entries.reserve(symbols.size());
  for (SymbolId x : symbols)
    entries.emplace_back(x, mass > 0.0 ? pdf.probs[x] / mass
                                       : 1.0 / static_cast<double>(symbols.size()));
  return rank(std::move(entries));
}

double sequence_logprob(const Fst& fst, std::span<const SymbolId> sequence) {
  double logprob = 0.0;
  StateId s = fst.start_state();
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    check_position(fst, sequence, i);
    const auto pdf = emission_pdf(fst, s);
    const double p = pdf.probs[sequence[i]];
    if (!(p > 0.0))
      throw FstError("zero-probability event at position " + std::to_string(i) +
                     "; train with a smoothing lambda > 0");
    logprob += std::log2(p);
    s = fst.next(s, sequence[i]);
  }
  return logprob;
}

double cross_entropy(const Fst& fst, std::span<const Sequence> sequences) {
  double total = 0.0;
  std::size_t tokens = 0;
  for (const Sequence& seq : sequences) {
    total += sequence_logprob(fst, seq);
    tokens += seq.size();
  }
  if (tokens == 0) throw FstError("perplexity is undefined without tokens");
  return -total / static_cast<double>(tokens);
}

double perplexity(const Fst& fst, std::span<const Sequence> sequences) {
  return std::exp2(cross_entropy(fst, sequences));
}

namespace {

std::string format_prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  return buf;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const Fst& fst, const DotOptions& options) {
  if (options.top_k == 0) throw FstError("top_k must be at least 1");
  std::ostringstream out;
  out << "digraph \"" << dot_escape(options.graph_name) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (StateId s = 0; s < fst.num_states(); ++s) {
    const auto pred = predict_next(fst, s);
    std::string label = std::to_string(s);
    for (std::size_t i = 0; i < std::min(options.top_k, pred.ranked.size()); ++i) {
      label += "\\n" + dot_escape(fst.alphabet().name(pred.ranked[i].first)) + " " +
               format_prob(pred.ranked[i].second);
    }
    out << "  s" << s << " [label=\"" << label << "\"";
    if (s == fst.start_state()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (StateId s = 0; s < fst.num_states(); ++s) {
    const auto pdf = emission_pdf(fst, s);
    for (SymbolId x = 0; x < fst.num_symbols(); ++x) {
      if (pdf.probs[x] < options.edge_threshold) continue;
      out << "  s" << s << " -> s" << fst.next(s, x) << " [label=\""
          << dot_escape(fst.alphabet().name(x)) << ", " << format_prob(pdf.probs[x]) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace dialogfst
