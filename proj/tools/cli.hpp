#ifndef DIALOGFST_TOOLS_CLI_HPP
#define DIALOGFST_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dialogfst/annotator.hpp"
#include "dialogfst/corpus.hpp"
#include "dialogfst/eval.hpp"
#include "dialogfst/learn.hpp"

namespace dialogfst::cli {

/// Everything a run needs. Loaded from a JSON file, then overridden by flags.
struct RunConfig {
  std::optional<std::string> rules_file;  // builtin rules when empty
  Schema schema = Schema::kNegotiation;
  GoldPolicy gold_policy = GoldPolicy::kPreferGold;
  SplitSpec split;
  TrainConfig fst_da;
  TrainConfig fst_strategy;
  EvalOptions eval;
  std::string out_dir = ".";
  std::uint64_t seed = 0;

  RunConfig();
};

/// Throws Error on unknown keys, bad values or referenced files that do not exist.
RunConfig parse_run_config(const std::string& json_text, const std::string& origin);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& config);

/// Entry point shared by the binary and the tests. Returns the exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dialogfst::cli

#endif  // DIALOGFST_TOOLS_CLI_HPP
