#ifndef DIALOGFST_LABELS_HPP
#define DIALOGFST_LABELS_HPP

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "dialogfst/corpus.hpp"

namespace dialogfst {

enum class DialogAct {
  kIntro,
  kInitPrice,
  kInsist,
  kAgree,
  kDisagree,
  kInform,
  kInquire,
};

inline constexpr std::size_t kNumDialogActs = 7;

std::string_view to_string(DialogAct act);
std::optional<DialogAct> parse_dialog_act(std::string_view label);
std::span<const DialogAct> all_dialog_acts();

/// How a strategy is detected: by lexicon rules or read from gold annotations
/// produced by an external classifier.
enum class DetectorKind { kRule, kGold };

struct StrategyInfo {
  std::string_view label;
  DetectorKind detector;
};

/// Strategy inventory of a schema in canonical row order. This order drives
/// the set-to-sequence encoding.
std::span<const StrategyInfo> strategy_inventory(Schema schema);

/// Row index of a label in the schema's inventory, or nullopt.
std::optional<std::size_t> strategy_row(Schema schema, std::string_view label);

// Markers used by the strategy sequence encoding.
inline constexpr std::string_view kNoStrategy = "none";
inline constexpr std::string_view kEndOfTurn = "eot";

}  // namespace dialogfst

#endif  // DIALOGFST_LABELS_HPP
