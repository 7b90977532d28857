#include "dialogfst/rules.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dialogfst/error.hpp"
#include "dialogfst/labels.hpp"

namespace dialogfst {

namespace {

#include "builtin_rules.inc"

constexpr std::string_view kHeader = "#! dialogfst-rules v";

std::string escape_regex(std::string_view literal) {
  static constexpr std::string_view kSpecial = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : literal) {
    if (kSpecial.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    // U+2019 and U+2018 (E2 80 99 / E2 80 98) become a plain apostrophe.
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(text[i + 2]) == 0x99 ||
         static_cast<unsigned char>(text[i + 2]) == 0x98)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back('\'');
      i += 2;
      continue;
    }
    if (std::isspace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

const std::vector<std::string_view>& RuleSet::known_labels() {
  static const std::vector<std::string_view> labels = [] {
    std::vector<std::string_view> l = {"act.intro",    "act.offer",         "act.agree",
                                       "act.agree_veto", "act.disagree",    "act.inquire",
                                       "price.nonunit"};
    for (const auto& s : strategy_inventory(Schema::kNegotiation))
      if (s.detector == DetectorKind::kRule) l.push_back(s.label);
    return l;
  }();
  return labels;
}

RuleSet RuleSet::parse(std::string_view text, std::string_view origin) {
  RuleSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::map<std::string, std::vector<std::string>, std::less<>> alternatives;
  auto fail = [&](const std::string& what) {
    throw RulesError(std::string(origin) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line.rfind(kHeader, 0) != 0) fail("missing header '#! dialogfst-rules v<N>'");
      try {
        set.version_ = std::stoi(line.substr(kHeader.size()));
      } catch (const std::exception&) {
        fail("bad version in header");
      }
      if (set.version_ != 1) fail("unsupported rules version " + std::to_string(set.version_));
      continue;
    }
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream fields(body);
    Rule rule;
    rule.line = line_no;
    fields >> rule.label >> rule.kind;
    std::getline(fields, rule.pattern);
    rule.pattern = trim(rule.pattern);
    if (rule.pattern.empty()) fail("expected '<label> <kind> <pattern>'");
    const auto& known = known_labels();
    if (std::find(known.begin(), known.end(), rule.label) == known.end())
      fail("unknown label '" + rule.label + "'");
    std::string piece;
    if (rule.kind == "word") {
      piece = "(?:^|[^a-z0-9_'])" + escape_regex(normalize_text(rule.pattern)) +
              "(?=$|[^a-z0-9_'])";
    } else if (rule.kind == "regex") {
      piece = rule.pattern;
      try {
        std::regex probe(piece, std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& e) {
        fail(std::string("invalid regex: ") + e.what());
      }
    } else {
      fail("unknown pattern kind '" + rule.kind + "' (expected word or regex)");
    }
    alternatives[rule.label].push_back("(?:" + piece + ")");
    set.rules_.push_back(std::move(rule));
  }
  if (line_no == 0) throw RulesError(std::string(origin) + ": empty rules file");
  for (auto& [label, pieces] : alternatives) {
    std::string joined;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i) joined += '|';
      joined += pieces[i];
    }
    set.compiled_.emplace(label, std::regex(joined, std::regex::ECMAScript | std::regex::icase |
                                                        std::regex::optimize));
  }
  return set;
}

RuleSet RuleSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RulesError("cannot open rules file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const RuleSet& RuleSet::builtin() {
  static const RuleSet set = parse(kBuiltinRules, "<builtin rules>");
  return set;
}

bool RuleSet::matches(std::string_view label, const std::string& normalized_text) const {
  auto it = compiled_.find(label);
  if (it == compiled_.end()) return false;
  return std::regex_search(normalized_text, it->second);
}

bool RuleSet::has_label(std::string_view label) const { return compiled_.contains(label); }

}  // namespace dialogfst
