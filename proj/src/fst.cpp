#include "dialogfst/fst.hpp"

#include <cmath>
#include <numeric>

#include "dialogfst/error.hpp"

namespace dialogfst {

Fst::Fst(Alphabet alphabet, double smoothing_lambda) : alphabet_(std::move(alphabet)) {
  if (alphabet_.empty()) throw FstError("cannot build an automaton over an empty alphabet");
  set_smoothing_lambda(smoothing_lambda);
  num_states_ = 1;
  start_state_ = 0;
  delta_.assign(alphabet_.size(), 0);
  counts_.assign(alphabet_.size(), 0);
  lineage_.assign(1, std::nullopt);
}

Fst Fst::from_parts(Alphabet alphabet, std::size_t num_states, StateId start_state,
                    double smoothing_lambda, std::vector<StateId> delta, std::vector<Count> counts,
                    std::vector<std::optional<Lineage>> lineage) {
  if (alphabet.empty()) throw FstError("cannot build an automaton over an empty alphabet");
  if (num_states == 0) throw FstError("an automaton needs at least one state");
  const std::size_t cells = num_states * alphabet.size();
  if (delta.size() != cells) throw FstError("delta table has the wrong size");
  if (counts.size() != cells) throw FstError("counts table has the wrong size");
  if (lineage.size() != num_states) throw FstError("lineage table has the wrong size");
  if (start_state >= num_states) throw FstError("start state out of range");
  for (StateId t : delta)
    if (t >= num_states) throw FstError("transition target out of range");
  for (const auto& l : lineage) {
    if (!l) continue;
    if (l->parent >= num_states || l->symbol >= alphabet.size() ||
        (l->source && *l->source >= num_states))
      throw FstError("lineage entry out of range");
  }
  Fst f;
  f.alphabet_ = std::move(alphabet);
  f.set_smoothing_lambda(smoothing_lambda);
  f.num_states_ = num_states;
  f.start_state_ = start_state;
  f.delta_ = std::move(delta);
  f.counts_ = std::move(counts);
  f.lineage_ = std::move(lineage);
  return f;
}

std::span<const Count> Fst::count_row(StateId state) const {
  return {counts_.data() + static_cast<std::size_t>(state) * alphabet_.size(), alphabet_.size()};
}

Count Fst::total_count(StateId state) const {
  const auto row = count_row(state);
  return std::accumulate(row.begin(), row.end(), Count{0});
}

void Fst::set_smoothing_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw FstError("smoothing lambda must be a finite non-negative number");
  lambda_ = lambda;
}

void Fst::check_state(StateId state) const {
  if (state >= num_states_)
    throw FstError("state " + std::to_string(state) + " out of range (automaton has " +
                   std::to_string(num_states_) + " states)");
}

void Fst::check_symbol(SymbolId symbol) const {
  if (symbol >= alphabet_.size())
    throw FstError("symbol id " + std::to_string(symbol) + " out of range (alphabet has " +
                   std::to_string(alphabet_.size()) + " symbols)");
}

bool Fst::operator==(const Fst& other) const {
  return alphabet_ == other.alphabet_ && num_states_ == other.num_states_ &&
         start_state_ == other.start_state_ && lambda_ == other.lambda_ &&
         delta_ == other.delta_ && counts_ == other.counts_ && lineage_ == other.lineage_;
}

void run_counts_into(Fst& fst, std::vector<Count> counts) {
  if (counts.size() != fst.delta_.size()) throw FstError("counts table has the wrong size");
  fst.counts_ = std::move(counts);
  fst.counts_current_ = true;
}

StateId FstEditor::add_state(StateId copy_from, Lineage lineage) {
  fst_.check_state(copy_from);
  const std::size_t a = fst_.alphabet_.size();
  const auto id = static_cast<StateId>(fst_.num_states_);
  const std::size_t row = static_cast<std::size_t>(copy_from) * a;
  for (std::size_t x = 0; x < a; ++x) fst_.delta_.push_back(fst_.delta_[row + x]);
  fst_.num_states_ += 1;
  fst_.counts_.assign(fst_.num_states_ * a, 0);
  fst_.counts_current_ = false;
  fst_.lineage_.push_back(lineage);
  return id;
}

void FstEditor::set_next(StateId state, SymbolId symbol, StateId target) {
  fst_.check_state(state);
  fst_.check_symbol(symbol);
  fst_.check_state(target);
  fst_.delta_[static_cast<std::size_t>(state) * fst_.alphabet_.size() + symbol] = target;
  fst_.counts_current_ = false;
}

StateEmbedding emission_pdf(const Fst& fst, StateId state) {
  fst.check_state(state);
  const std::size_t a = fst.num_symbols();
  const auto row = fst.count_row(state);
  const double lambda = fst.smoothing_lambda();
  const double total = static_cast<double>(fst.total_count(state));
  const double denom = total + lambda * static_cast<double>(a);
  StateEmbedding e;
  e.probs.resize(a);
  if (denom <= 0.0) {
    e.probs.assign(a, 1.0 / static_cast<double>(a));
    return e;
  }
  for (std::size_t x = 0; x < a; ++x) e.probs[x] = (static_cast<double>(row[x]) + lambda) / denom;
  return e;
}

double count_entropy(std::span<const Count> counts) {
  const Count total = std::accumulate(counts.begin(), counts.end(), Count{0});
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (Count c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double state_entropy(const Fst& fst, StateId state) {
  fst.check_state(state);
  return count_entropy(fst.count_row(state));
}

std::string check_invariants(const Fst& fst) {
  const std::size_t a = fst.num_symbols();
  if (fst.num_states() == 0) return "no states";
  if (fst.start_state() >= fst.num_states()) return "start state out of range";
  if (fst.delta().size() != fst.num_states() * a)
    return "delta is not total: " + std::to_string(fst.delta().size()) + " entries for " +
           std::to_string(fst.num_states()) + " states x " + std::to_string(a) + " symbols";
  for (std::size_t i = 0; i < fst.delta().size(); ++i)
    if (fst.delta()[i] >= fst.num_states())
      return "transition " + std::to_string(i) + " targets a missing state";
  for (StateId s = 0; s < fst.num_states(); ++s) {
    const auto pdf = emission_pdf(fst, s);
    double sum = 0.0;
    for (double p : pdf.probs) {
      if (!(p >= 0.0 && p <= 1.0)) return "state " + std::to_string(s) + " has p outside [0,1]";
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      return "state " + std::to_string(s) + " embedding sums to " + std::to_string(sum);
  }
  return {};
}

}  // namespace dialogfst
