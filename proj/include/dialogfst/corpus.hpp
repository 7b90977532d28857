#ifndef DIALOGFST_CORPUS_HPP
#define DIALOGFST_CORPUS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialogfst/error.hpp"

namespace dialogfst {

enum class Schema { kNegotiation, kPersuasion };

std::string_view to_string(Schema schema);
Schema parse_schema(std::string_view name);

/// The two roles a schema admits, in canonical order (buyer/seller or
/// persuader/persuadee).
std::array<std::string_view, 2> schema_roles(Schema schema);

struct Scenario {
  std::string title;
  std::string description;
  double listing_price = 0.0;
  std::optional<double> buyer_target_price;

  bool operator==(const Scenario&) const = default;
};

struct Turn {
  std::string role;
  std::string text;
  std::optional<std::vector<std::string>> gold_acts;
  std::optional<std::vector<std::string>> gold_strategies;

  bool operator==(const Turn&) const = default;
};

struct Dialog {
  std::string dialog_id;
  Scenario scenario;
  std::vector<Turn> turns;

  bool operator==(const Dialog&) const = default;
};

/// Parses JSON-Lines, one dialog per line. Blank lines are skipped. Throws
/// CorpusError naming the line number (malformed JSON, missing fields) or the
/// dialog id (unknown role, empty turns, duplicate id, duplicate labels,
/// target price above listing price). A target price equal to the listing
/// price is accepted with a warning.
std::vector<Dialog> load_corpus(std::istream& source, Schema schema,
                                Diagnostics* diagnostics = nullptr);
std::vector<Dialog> load_corpus_file(const std::string& path, Schema schema,
                                     Diagnostics* diagnostics = nullptr);

/// Writes the JSONL format with sorted keys, UTF-8 and "\n" terminators.
void write_corpus(std::ostream& sink, std::span<const Dialog> dialogs);
std::string dialog_to_json_line(const Dialog& dialog);

struct SplitSpec {
  double train_fraction = 0.8;
  double val_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;

  /// Throws CorpusError unless each fraction is in [0,1] and they sum to 1
  /// within 1e-9.
  void validate() const;
};

struct CorpusSplit {
  std::vector<Dialog> train;
  std::vector<Dialog> val;
  std::vector<Dialog> test;
};

/// Split sizes for n items: val and test get floor(n * fraction), train gets
/// the remainder.
struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

/// Seeded shuffle followed by contiguous slicing into train, val, test.
CorpusSplit split_corpus(std::span<const Dialog> dialogs, const SplitSpec& spec);

struct CorpusStats {
  std::size_t num_dialogs = 0;
  double mean_turns = 0.0;
  std::size_t vocab_size = 0;
};

/// vocab_size counts distinct lowercased whitespace-delimited tokens.
CorpusStats corpus_stats(std::span<const Dialog> dialogs);

}  // namespace dialogfst

#endif  // DIALOGFST_CORPUS_HPP
