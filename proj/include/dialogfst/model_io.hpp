#ifndef DIALOGFST_MODEL_IO_HPP
#define DIALOGFST_MODEL_IO_HPP

#include <string>
#include <string_view>

#include "dialogfst/fst.hpp"

namespace dialogfst {

inline constexpr int kModelFormatVersion = 1;

/// JSON object with keys alphabet, counts, delta (row-major state x symbol),
/// format_version, lineage ([parent, symbol] or [parent, symbol, source], or
/// null for the root state), num_states, smoothing_lambda, start_state. Keys
/// are sorted and doubles are printed round-trip exact, so equal automata
/// serialize to equal bytes.
std::string serialize(const Fst& fst);

/// Throws ModelFormatError on parse failure, an unknown format version, or
/// inconsistent tables.
Fst deserialize(std::string_view bytes);

void save_model(const Fst& fst, const std::string& path);
Fst load_model(const std::string& path);

}  // namespace dialogfst

#endif  // DIALOGFST_MODEL_IO_HPP
