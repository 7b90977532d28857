#include "dialogfst/model_io.hpp"

#include <fstream>
#include <sstream>

#include "dialogfst/error.hpp"
#include "json.hpp"

namespace dialogfst {

using nlohmann::json;

std::string serialize(const Fst& fst) {
  json lineage = json::array();
  for (const auto& l : fst.lineage()) {
    if (!l) {
      lineage.push_back(nullptr);
      continue;
    }
    json entry = {l->parent, l->symbol};
    if (l->source) entry.push_back(*l->source);
    lineage.push_back(std::move(entry));
  }
  json j = {
      {"format_version", kModelFormatVersion},
      {"alphabet", fst.alphabet().names()},
      {"num_states", fst.num_states()},
      {"start_state", fst.start_state()},
      {"smoothing_lambda", fst.smoothing_lambda()},
      {"delta", std::vector<StateId>(fst.delta().begin(), fst.delta().end())},
      {"counts", std::vector<Count>(fst.counts().begin(), fst.counts().end())},
      {"lineage", std::move(lineage)},
  };
  return j.dump() + "\n";
}

Fst deserialize(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("model is not valid JSON (truncated?): ") + e.what());
  }
  try {
    if (!j.is_object()) throw ModelFormatError("model must be a JSON object");
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw ModelFormatError("unsupported model format_version " + std::to_string(version) +
                             " (this reader understands " +
                             std::to_string(kModelFormatVersion) + ")");
    std::vector<std::optional<Lineage>> lineage;
    for (const json& entry : j.at("lineage")) {
      if (entry.is_null()) {
        lineage.emplace_back(std::nullopt);
        continue;
      }
      if (!entry.is_array() || entry.size() < 2 || entry.size() > 3)
        throw ModelFormatError("lineage entries must be [parent, symbol] or [parent, symbol, source]");
      Lineage l{entry[0].get<StateId>(), entry[1].get<SymbolId>(), std::nullopt};
      if (entry.size() == 3) l.source = entry[2].get<StateId>();
      lineage.emplace_back(l);
    }
    return Fst::from_parts(Alphabet(j.at("alphabet").get<std::vector<std::string>>()),
                           j.at("num_states").get<std::size_t>(),
                           j.at("start_state").get<StateId>(),
                           j.at("smoothing_lambda").get<double>(),
                           j.at("delta").get<std::vector<StateId>>(),
                           j.at("counts").get<std::vector<Count>>(), std::move(lineage));
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model: ") + e.what());
  } catch (const FstError& e) {
    throw ModelFormatError(std::string("inconsistent model: ") + e.what());
  }
}

void save_model(const Fst& fst, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model file '" + path + "'");
  out << serialize(fst);
  if (!out) throw Error("failed writing model file '" + path + "'");
}

Fst load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

}  // namespace dialogfst
