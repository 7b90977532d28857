#include "dialogfst/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dialogfst/rng.hpp"
#include "json.hpp"

namespace dialogfst {

using nlohmann::json;

std::string_view to_string(Schema schema) {
  return schema == Schema::kNegotiation ? "negotiation" : "persuasion";
}

Schema parse_schema(std::string_view name) {
  if (name == "negotiation") return Schema::kNegotiation;
  if (name == "persuasion") return Schema::kPersuasion;
  throw CorpusError("unknown schema '" + std::string(name) +
                    "' (expected negotiation or persuasion)");
}

std::array<std::string_view, 2> schema_roles(Schema schema) {
  if (schema == Schema::kNegotiation) return {"buyer", "seller"};
  return {"persuader", "persuadee"};
}

namespace {

std::optional<std::vector<std::string>> read_labels(const json& turn, const char* key) {
  auto it = turn.find(key);
  if (it == turn.end() || it->is_null()) return std::nullopt;
  return it->get<std::vector<std::string>>();
}

bool has_duplicates(const std::vector<std::string>& labels) {
  std::set<std::string_view> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) return true;
  return false;
}

Dialog parse_dialog(const json& j) {
  Dialog d;
  d.dialog_id = j.at("dialog_id").get<std::string>();
  const json& sc = j.at("scenario");
  d.scenario.title = sc.at("title").get<std::string>();
  d.scenario.description = sc.at("description").get<std::string>();
  d.scenario.listing_price = sc.at("listing_price").get<double>();
  if (auto it = sc.find("buyer_target_price"); it != sc.end() && !it->is_null())
    d.scenario.buyer_target_price = it->get<double>();
  for (const json& t : j.at("turns")) {
    Turn turn;
    turn.role = t.at("role").get<std::string>();
    turn.text = t.at("text").get<std::string>();
    turn.gold_acts = read_labels(t, "acts");
    turn.gold_strategies = read_labels(t, "strategies");
    d.turns.push_back(std::move(turn));
  }
  return d;
}

void validate_dialog(const Dialog& d, Schema schema, Diagnostics* diagnostics) {
  const auto roles = schema_roles(schema);
  const std::string& id = d.dialog_id;
  if (d.turns.empty()) throw CorpusError("dialog '" + id + "' has no turns");
  const Scenario& sc = d.scenario;
  if (!(sc.listing_price >= 0.0))
    throw CorpusError("dialog '" + id + "' has a negative listing price");
  if (sc.buyer_target_price) {
    if (!(*sc.buyer_target_price >= 0.0))
      throw CorpusError("dialog '" + id + "' has a negative buyer target price");
    if (*sc.buyer_target_price > sc.listing_price)
      throw CorpusError("dialog '" + id + "' has a buyer target price above the listing price");
    if (*sc.buyer_target_price == sc.listing_price && diagnostics)
      diagnostics->warn("dialog '" + id + "': buyer target price equals listing price");
  }
  for (const Turn& t : d.turns) {
    if (t.role != roles[0] && t.role != roles[1])
      throw CorpusError("dialog '" + id + "' has unknown role '" + t.role + "' for schema " +
                        std::string(to_string(schema)));
    if ((t.gold_acts && has_duplicates(*t.gold_acts)) ||
        (t.gold_strategies && has_duplicates(*t.gold_strategies)))
      throw CorpusError("dialog '" + id + "' has a turn with duplicate gold labels");
  }
}

json labels_json(const std::optional<std::vector<std::string>>& labels) {
  if (!labels) return nullptr;
  return *labels;
}

}  // namespace

std::vector<Dialog> load_corpus(std::istream& source, Schema schema, Diagnostics* diagnostics) {
  std::vector<Dialog> dialogs;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Dialog d;
    try {
      d = parse_dialog(json::parse(line));
    } catch (const json::exception& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + e.what());
    }
    validate_dialog(d, schema, diagnostics);
    if (!ids.insert(d.dialog_id).second)
      throw CorpusError("duplicate dialog_id '" + d.dialog_id + "' on line " +
                        std::to_string(line_no));
    dialogs.push_back(std::move(d));
  }
  return dialogs;
}

std::vector<Dialog> load_corpus_file(const std::string& path, Schema schema,
                                     Diagnostics* diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'");
  return load_corpus(in, schema, diagnostics);
}

std::string dialog_to_json_line(const Dialog& d) {
  json turns = json::array();
  for (const Turn& t : d.turns) {
    turns.push_back({{"role", t.role},
                     {"text", t.text},
                     {"acts", labels_json(t.gold_acts)},
                     {"strategies", labels_json(t.gold_strategies)}});
  }
  json scenario = {{"title", d.scenario.title},
                   {"description", d.scenario.description},
                   {"listing_price", d.scenario.listing_price},
                   {"buyer_target_price", d.scenario.buyer_target_price
                                              ? json(*d.scenario.buyer_target_price)
                                              : json(nullptr)}};
  json j = {{"dialog_id", d.dialog_id}, {"scenario", scenario}, {"turns", turns}};
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

void write_corpus(std::ostream& sink, std::span<const Dialog> dialogs) {
  for (const Dialog& d : dialogs) sink << dialog_to_json_line(d) << '\n';
}

void SplitSpec::validate() const {
  for (double f : {train_fraction, val_fraction, test_fraction})
    if (!(f >= 0.0 && f <= 1.0)) throw CorpusError("split fractions must lie in [0,1]");
  if (std::abs(train_fraction + val_fraction + test_fraction - 1.0) > 1e-9)
    throw CorpusError("split fractions must sum to 1");
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  // The epsilon absorbs fractions such as 643/6682 whose product with n lands
  // a hair below an integer.
  auto portion = [n](double f) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * f + 1e-9));
  };
  SplitSizes s;
  s.val = std::min(portion(spec.val_fraction), n);
  s.test = std::min(portion(spec.test_fraction), n - s.val);
  s.train = n - s.val - s.test;
  return s;
}

CorpusSplit split_corpus(std::span<const Dialog> dialogs, const SplitSpec& spec) {
  const SplitSizes sizes = split_sizes(dialogs.size(), spec);
  const auto order = shuffled_indices(dialogs.size(), spec.seed);
  CorpusSplit out;
  out.train.reserve(sizes.train);
  out.val.reserve(sizes.val);
  out.test.reserve(sizes.test);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Dialog& d = dialogs[order[i]];
    if (i < sizes.train)
      out.train.push_back(d);
    else if (i < sizes.train + sizes.val)
      out.val.push_back(d);
    else
      out.test.push_back(d);
  }
  return out;
}

CorpusStats corpus_stats(std::span<const Dialog> dialogs) {
  CorpusStats stats;
  if (dialogs.empty()) return stats;
  std::unordered_set<std::string> vocab;
  std::size_t turns = 0;
  for (const Dialog& d : dialogs) {
    turns += d.turns.size();
    for (const Turn& t : d.turns) {
      std::istringstream words(t.text);
      std::string w;
      while (words >> w) {
        std::transform(w.begin(), w.end(), w.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        vocab.insert(std::move(w));
      }
    }
  }
  stats.num_dialogs = dialogs.size();
  stats.mean_turns = static_cast<double>(turns) / static_cast<double>(dialogs.size());
  stats.vocab_size = vocab.size();
  return stats;
}

}  // namespace dialogfst
