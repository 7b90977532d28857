#include "dialogfst/alphabet.hpp"

#include "dialogfst/error.hpp"

namespace dialogfst {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<SymbolId>(i)).second)
      throw FstError("duplicate symbol '" + names_[i] + "' in alphabet");
  }
}

const std::string& Alphabet::name(SymbolId id) const {
  if (id >= names_.size()) throw FstError("symbol id " + std::to_string(id) + " out of range");
  return names_[id];
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId Alphabet::id(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw FstError("unknown symbol '" + std::string(name) + "'");
}

Sequence encode(const Alphabet& alphabet, std::span<const std::string> symbols) {
  Sequence out;
  out.reserve(symbols.size());
  for (const auto& s : symbols) out.push_back(alphabet.id(s));
  return out;
}

}  // namespace dialogfst
