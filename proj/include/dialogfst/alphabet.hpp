#ifndef DIALOGFST_ALPHABET_HPP
#define DIALOGFST_ALPHABET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dialogfst {

using SymbolId = std::uint32_t;
using Sequence = std::vector<SymbolId>;

/// Interned symbol vocabulary with dense ids 0..n-1 in insertion order.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws FstError on duplicate names.
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  const std::string& name(SymbolId id) const;
  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws FstError when the name is unknown.
  SymbolId id(std::string_view name) const;

  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId, Hash, std::equal_to<>> index_;
};

/// Maps symbol names to ids. Throws FstError naming the first unknown symbol.
Sequence encode(const Alphabet& alphabet, std::span<const std::string> symbols);

}  // namespace dialogfst

#endif  // DIALOGFST_ALPHABET_HPP
