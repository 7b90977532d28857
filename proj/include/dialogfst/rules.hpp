#ifndef DIALOGFST_RULES_HPP
#define DIALOGFST_RULES_HPP

#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace dialogfst {

/// Lexicon rules loaded from a plain-text rules file.
///
/// Format: a first line "#! dialogfst-rules v<N>", then one rule per line:
///
///     <label> <kind> <pattern...>
///
/// where kind is "word" (case-insensitive whole-word or whole-phrase match)
/// or "regex" (ECMAScript, case-insensitive). Lines starting with '#' and
/// blank lines are ignored. All patterns sharing a label are OR-ed.
class RuleSet {
 public:
  struct Rule {
    std::string label;
    std::string kind;
    std::string pattern;
    int line = 0;
  };

  static RuleSet parse(std::string_view text, std::string_view origin = "<rules>");
  static RuleSet load(const std::string& path);
  /// The rules file shipped with the project, compiled in.
  static const RuleSet& builtin();

  /// True when any rule of `label` matches `normalized_text`, which must
  /// already be passed through normalize_text().
  bool matches(std::string_view label, const std::string& normalized_text) const;

  bool has_label(std::string_view label) const;
  int version() const { return version_; }
  const std::vector<Rule>& rules() const { return rules_; }

  /// Labels a rules file may use.
  static const std::vector<std::string_view>& known_labels();

 private:
  int version_ = 0;
  std::vector<Rule> rules_;
  std::map<std::string, std::regex, std::less<>> compiled_;
};

/// Lowercases ASCII, maps typographic apostrophes to '\'' and collapses runs
/// of whitespace to one space.
std::string normalize_text(std::string_view text);

}  // namespace dialogfst

#endif  // DIALOGFST_RULES_HPP
