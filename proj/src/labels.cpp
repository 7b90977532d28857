#include "dialogfst/labels.hpp"

#include <algorithm>

namespace dialogfst {

namespace {

constexpr std::array<DialogAct, kNumDialogActs> kActs = {
    DialogAct::kIntro, DialogAct::kInitPrice, DialogAct::kInsist, DialogAct::kAgree,
    DialogAct::kDisagree, DialogAct::kInform, DialogAct::kInquire,
};

constexpr std::array<std::string_view, kNumDialogActs> kActNames = {
    "intro", "init-price", "insist", "agree", "disagree", "inform", "inquire",
};

constexpr std::array<StrategyInfo, 15> kNegotiation = {{
    {"describe_product", DetectorKind::kGold},
    {"rephrase_product", DetectorKind::kGold},
    {"embellish_product", DetectorKind::kGold},
    {"address_concerns", DetectorKind::kGold},
    {"communicate_interests", DetectorKind::kGold},
    {"propose_price", DetectorKind::kRule},
    {"do_not_propose_first", DetectorKind::kRule},
    {"negotiate_side_offers", DetectorKind::kRule},
    {"hedge", DetectorKind::kRule},
    {"communicate_politely", DetectorKind::kRule},
    {"build_rapport", DetectorKind::kRule},
    {"talk_informally", DetectorKind::kRule},
    {"show_dominance", DetectorKind::kRule},
    {"negative_sentiment", DetectorKind::kRule},
    {"certainty_words", DetectorKind::kRule},
}};

constexpr std::array<StrategyInfo, 10> kPersuasion = {{
    {"logical_appeal", DetectorKind::kGold},
    {"emotion_appeal", DetectorKind::kGold},
    {"credibility_appeal", DetectorKind::kGold},
    {"foot_in_the_door", DetectorKind::kGold},
    {"self_modeling", DetectorKind::kGold},
    {"personal_story", DetectorKind::kGold},
    {"donation_information", DetectorKind::kGold},
    {"source_related_inquiry", DetectorKind::kGold},
    {"task_related_inquiry", DetectorKind::kGold},
    {"personal_related_inquiry", DetectorKind::kGold},
}};

}  // namespace

std::string_view to_string(DialogAct act) { return kActNames[static_cast<std::size_t>(act)]; }

std::optional<DialogAct> parse_dialog_act(std::string_view label) {
  auto it = std::find(kActNames.begin(), kActNames.end(), label);
  if (it == kActNames.end()) return std::nullopt;
  return kActs[static_cast<std::size_t>(it - kActNames.begin())];
}

std::span<const DialogAct> all_dialog_acts() { return kActs; }

std::span<const StrategyInfo> strategy_inventory(Schema schema) {
  if (schema == Schema::kNegotiation) return kNegotiation;
  return kPersuasion;
}

std::optional<std::size_t> strategy_row(Schema schema, std::string_view label) {
  const auto inv = strategy_inventory(schema);
  for (std::size_t i = 0; i < inv.size(); ++i)
    if (inv[i].label == label) return i;
  return std::nullopt;
}

}  // namespace dialogfst
