#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "dialogfst/error.hpp"
#include "dialogfst/inference.hpp"
#include "dialogfst/model_io.hpp"
#include "dialogfst/rules.hpp"
#include "json.hpp"

namespace dialogfst::cli {

using nlohmann::json;

RunConfig::RunConfig() {
  fst_da.target_states = 3;
  fst_strategy.target_states = 3;
}

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw Error(where + ": unknown key '" + key + "'");
  }
}

void read_train_config(const json& j, TrainConfig& c, const std::string& where) {
  check_keys(j, {"k", "lambda", "min_support", "min_gain", "split_scope"}, where);
  if (j.contains("k")) c.target_states = j["k"].get<std::size_t>();
  if (j.contains("lambda")) c.smoothing_lambda = j["lambda"].get<double>();
  if (j.contains("min_support")) c.min_child_support = j["min_support"].get<Count>();
  if (j.contains("min_gain")) c.min_entropy_gain = j["min_gain"].get<double>();
  if (j.contains("split_scope"))
    c.scope = parse_split_scope(j["split_scope"].get<std::string>());
}

json train_config_json(const TrainConfig& c) {
  return {{"k", c.target_states},
          {"lambda", c.smoothing_lambda},
          {"min_support", c.min_child_support},
          {"min_gain", c.min_entropy_gain},
          {"split_scope", std::string(to_string(c.scope))}};
}

BaselineKind parse_baseline(const std::string& name) {
  for (auto k : {BaselineKind::kUniform, BaselineKind::kUnigram, BaselineKind::kMarkov1})
    if (to_string(k) == name) return k;
  throw Error("unknown baseline '" + name + "' (expected uniform, unigram or markov1)");
}

BigramMatch parse_bigram_match(const std::string& name) {
  if (name == "subset") return BigramMatch::kSubset;
  if (name == "exact") return BigramMatch::kExact;
  throw Error("unknown bigram match '" + name + "' (expected subset or exact)");
}

std::string_view to_string(BigramMatch m) { return m == BigramMatch::kSubset ? "subset" : "exact"; }

StrategyRule::Kind parse_rule_kind(const std::string& name) {
  if (name == "top_k") return StrategyRule::Kind::kTopK;
  if (name == "threshold") return StrategyRule::Kind::kThreshold;
  throw Error("unknown strategy rule '" + name + "' (expected top_k or threshold)");
}

void require_file(const std::string& path, const std::string& what) {
  if (!std::filesystem::is_regular_file(path)) throw Error(what + " not found: " + path);
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(origin + ": invalid JSON: " + e.what());
  }
  RunConfig c;
  try {
    check_keys(j, {"rules", "schema", "gold_policy", "seed", "out", "split", "fst", "fst_da",
                   "fst_strategy", "eval"},
               origin);
    if (j.contains("rules") && !j["rules"].is_null()) {
      c.rules_file = j["rules"].get<std::string>();
      require_file(*c.rules_file, "rules file");
    }
    if (j.contains("schema")) c.schema = parse_schema(j["schema"].get<std::string>());
    if (j.contains("gold_policy"))
      c.gold_policy = parse_gold_policy(j["gold_policy"].get<std::string>());
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("split")) {
      const json& s = j["split"];
      check_keys(s, {"train", "val", "test"}, origin + ": split");
      if (s.contains("train")) c.split.train_fraction = s["train"].get<double>();
      if (s.contains("val")) c.split.val_fraction = s["val"].get<double>();
      if (s.contains("test")) c.split.test_fraction = s["test"].get<double>();
    }
    if (j.contains("fst")) {
      read_train_config(j["fst"], c.fst_da, origin + ": fst");
      read_train_config(j["fst"], c.fst_strategy, origin + ": fst");
    }
    if (j.contains("fst_da")) read_train_config(j["fst_da"], c.fst_da, origin + ": fst_da");
    if (j.contains("fst_strategy"))
      read_train_config(j["fst_strategy"], c.fst_strategy, origin + ": fst_strategy");
    if (j.contains("eval")) {
      const json& e = j["eval"];
      check_keys(e, {"strategy_rule", "top_labels", "tau", "bigram_match", "baselines"},
                 origin + ": eval");
      if (e.contains("strategy_rule") || e.contains("top_labels") || e.contains("tau")) {
        StrategyRule rule;
        rule.kind = parse_rule_kind(e.value("strategy_rule", std::string("top_k")));
        if (e.contains("top_labels")) rule.k = e["top_labels"].get<std::size_t>();
        if (e.contains("tau")) rule.tau = e["tau"].get<double>();
        c.eval.strategy_rule = rule;
      }
      if (e.contains("bigram_match"))
        c.eval.bigram_match = parse_bigram_match(e["bigram_match"].get<std::string>());
      if (e.contains("baselines")) {
        c.eval.baselines.clear();
        for (const auto& b : e["baselines"]) c.eval.baselines.push_back(parse_baseline(b.get<std::string>()));
      }
    }
  } catch (const json::exception& e) {
    throw Error(origin + ": " + e.what());
  }
  c.split.seed = c.seed;
  c.split.validate();
  c.fst_da.validate();
  c.fst_strategy.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path);
}

std::string run_config_to_json(const RunConfig& c) {
  json eval = {{"bigram_match", std::string(to_string(c.eval.bigram_match))}};
  json baselines = json::array();
  for (auto b : c.eval.baselines) baselines.push_back(std::string(to_string(b)));
  eval["baselines"] = baselines;
  if (c.eval.strategy_rule) {
    const auto& r = *c.eval.strategy_rule;
    eval["strategy_rule"] = r.kind == StrategyRule::Kind::kTopK ? "top_k" : "threshold";
    eval["top_labels"] = r.k;
    if (!std::isnan(r.tau)) eval["tau"] = r.tau;
  }
  json j = {{"rules", c.rules_file ? json(*c.rules_file) : json(nullptr)},
            {"schema", std::string(to_string(c.schema))},
            {"gold_policy", std::string(to_string(c.gold_policy))},
            {"seed", c.seed},
            {"out", c.out_dir},
            {"split",
             {{"train", c.split.train_fraction},
              {"val", c.split.val_fraction},
              {"test", c.split.test_fraction}}},
            {"fst_da", train_config_json(c.fst_da)},
            {"fst_strategy", train_config_json(c.fst_strategy)},
            {"eval", eval}};
  return j.dump(2) + "\n";
}

namespace {

// Flags shared by every subcommand. Only flags actually given override the config.
struct Common {
  std::string config_path, out, rules, schema, gold_policy, split_scope;
  std::uint64_t seed = 0, min_support = 0;
  std::size_t k = 0;
  double lambda = 0.0, min_gain = 0.0;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app) {
    opts["config"] = app->add_option("--config", config_path, "JSON run configuration");
    opts["seed"] = app->add_option("--seed", seed, "Seed for corpus splitting");
    opts["out"] = app->add_option("--out", out, "Output directory");
    opts["rules"] = app->add_option("--rules", rules, "Rules file (builtin rules when omitted)");
    opts["schema"] = app->add_option("--schema", schema, "negotiation or persuasion");
    opts["gold_policy"] = app->add_option("--gold-policy", gold_policy, "prefer_gold or rules_only");
    opts["k"] = app->add_option("--k", k, "Target number of FST states");
    opts["lambda"] = app->add_option("--lambda", lambda, "Emission smoothing constant");
    opts["min_support"] = app->add_option("--min-support", min_support, "Minimum child support");
    opts["min_gain"] = app->add_option("--min-gain", min_gain, "Minimum entropy gain in bits");
    opts["split_scope"] = app->add_option("--split-scope", split_scope, "edge or symbol");
  }
  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }

  RunConfig resolve() const {
    RunConfig c = given("config") ? load_run_config(config_path) : RunConfig();
    if (given("seed")) c.seed = seed;
    if (given("out")) c.out_dir = out;
    if (given("rules")) {
      require_file(rules, "rules file");
      c.rules_file = rules;
    }
    if (given("schema")) c.schema = parse_schema(schema);
    if (given("gold_policy")) c.gold_policy = parse_gold_policy(gold_policy);
    for (TrainConfig* t : {&c.fst_da, &c.fst_strategy}) {
      if (given("k")) t->target_states = k;
      if (given("lambda")) t->smoothing_lambda = lambda;
      if (given("min_support")) t->min_child_support = min_support;
      if (given("min_gain")) t->min_entropy_gain = min_gain;
      if (given("split_scope")) t->scope = parse_split_scope(split_scope);
      t->validate();
    }
    c.split.seed = c.seed;
    return c;
  }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

void flush_warnings(const Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

std::vector<AnnotatedDialog> load_annotated(const std::string& path, Schema schema,
                                            std::ostream& err) {
  Diagnostics diag;
  const auto dialogs = load_corpus_file(path, schema, &diag);
  flush_warnings(diag, err);
  std::vector<AnnotatedDialog> out;
  out.reserve(dialogs.size());
  for (const auto& d : dialogs) out.push_back(from_annotated_dialog(d, schema));
  return out;
}

std::vector<Dialog> to_dialogs(std::span<const AnnotatedDialog> annotated) {
  std::vector<Dialog> out;
  for (const auto& a : annotated) out.push_back(to_dialog(a));
  return out;
}

std::vector<AnnotatedDialog> from_dialogs(std::span<const Dialog> dialogs, Schema schema) {
  std::vector<AnnotatedDialog> out;
  for (const auto& d : dialogs) out.push_back(from_annotated_dialog(d, schema));
  return out;
}

json split_json(const RunConfig& c, const CorpusSplit& s) {
  return {{"seed", c.seed},
          {"fractions",
           {{"train", c.split.train_fraction},
            {"val", c.split.val_fraction},
            {"test", c.split.test_fraction}}},
          {"sizes", {{"train", s.train.size()}, {"val", s.val.size()}, {"test", s.test.size()}}}};
}

Alphabet stream_alphabet(Schema schema, bool acts) {
  return Alphabet(acts ? act_symbol_inventory(schema) : strategy_symbol_inventory(schema));
}

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : " ") + n;
  return s;
}

// ---------------------------------------------------------------------------

int cmd_annotate(const RunConfig& c, const std::string& input, bool out_given, std::ostream& out,
                 std::ostream& err) {
  std::optional<RuleSet> loaded;
  if (c.rules_file) loaded = RuleSet::load(*c.rules_file);
  const RuleSet& rules = loaded ? *loaded : RuleSet::builtin();
  Diagnostics diag;
  const auto dialogs = load_corpus_file(input, c.schema, &diag);
  const Annotator annotator(rules, c.schema, c.gold_policy);
  const auto annotated = annotator.annotate_all(dialogs, &diag);
  flush_warnings(diag, err);

  std::ostringstream jsonl;
  write_corpus(jsonl, to_dialogs(annotated));

  std::map<std::string, std::size_t> acts, strategies;
  std::size_t turns = 0;
  for (const auto& d : annotated)
    for (const auto& t : d.turns) {
      ++turns;
      ++acts[std::string(to_string(t.act))];
      for (const auto& s : t.strategies) ++strategies[s];
    }
  std::ostringstream summary;
  summary << "annotated " << annotated.size() << " dialogs, " << turns << " turns\n";
  summary << "acts:\n";
  for (const auto& [label, n] : acts) summary << "  " << label << ' ' << n << '\n';
  summary << "strategies:\n";
  for (const auto& [label, n] : strategies) summary << "  " << label << ' ' << n << '\n';

  if (out_given) {
    const auto path = std::filesystem::path(c.out_dir) / "annotated.jsonl";
    write_file(path, jsonl.str());
    out << summary.str() << "wrote " << path.string() << '\n';
  } else {
    out << jsonl.str();
    err << summary.str();
  }
  return 0;
}

int cmd_train(const RunConfig& c, const std::string& input, const std::string& which, bool split,
              std::ostream& out) {
  const bool acts = which == "da";
  if (!acts && which != "strategy") throw Error("--which must be da or strategy, got '" + which + "'");
  const TrainConfig& tc = acts ? c.fst_da : c.fst_strategy;
  tc.validate();

  Diagnostics diag;
  const auto dialogs = load_corpus_file(input, c.schema, &diag);
  std::vector<Dialog> train = dialogs;
  json split_log = nullptr;
  if (split) {
    auto parts = split_corpus(dialogs, c.split);
    split_log = split_json(c, parts);
    train = std::move(parts.train);
  }
  if (train.empty()) throw Error("empty corpus: no training dialogs in " + input);
  if (!acts)
    for (const auto& d : train)
      for (const auto& t : d.turns)
        if (!t.gold_strategies)
          throw Error("dialog '" + d.dialog_id + "' has no strategy annotations");
  const auto annotated = from_dialogs(train, c.schema);
  const Alphabet alphabet = stream_alphabet(c.schema, acts);
  const auto sequences =
      acts ? act_sequences(annotated, alphabet) : strategy_sequences(annotated, alphabet);
  std::size_t symbols = 0;
  for (const auto& s : sequences) symbols += s.size();
  if (symbols == 0) throw Error("empty corpus: no symbols in " + input);

  const TrainResult result = train_fst_logged(sequences, alphabet, tc);

  json history = json::array();
  std::size_t states = 1;
  for (const auto& h : result.history) {
    ++states;
    json entry = {{"state", h.target_state},
                  {"symbol", alphabet.name(h.incoming_symbol)},
                  {"source", h.source_state ? json(*h.source_state) : json(nullptr)},
                  {"gain", h.gain()},
                  {"parent_entropy", h.parent_entropy},
                  {"weighted_child_entropy", h.weighted_child_entropy},
                  {"child_support", h.child_support},
                  {"rest_support", h.rest_support},
                  {"num_states", states}};
    history.push_back(entry);
  }
  json log = {{"which", which},
              {"input", input},
              {"seed", c.seed},
              {"schema", std::string(to_string(c.schema))},
              {"config", train_config_json(tc)},
              {"split", split_log},
              {"training_dialogs", train.size()},
              {"training_symbols", symbols},
              {"final_states", result.fst.num_states()},
              {"splits", history}};

  const auto dir = std::filesystem::path(c.out_dir);
  const std::string stem = acts ? "fst-da" : "fst-strategy";
  write_file(dir / (stem + ".json"), serialize(result.fst));
  write_file(dir / (stem + ".log.json"), log.dump(2) + "\n");
  out << "trained " << stem << " with " << result.fst.num_states() << " states ("
      << result.history.size() << " splits) on " << train.size() << " dialogs\n";
  out << "wrote " << (dir / (stem + ".json")).string() << '\n';
  return 0;
}

void check_alphabet(const Fst& model, const std::string& path, const Alphabet& expected) {
  if (model.alphabet() == expected) return;
  throw EvalError("alphabet mismatch for " + path + "\n  model:  [" + join(model.alphabet().names()) +
                  "]\n  corpus: [" + join(expected.names()) + "]");
}

struct EvalArgs {
  std::string model_da, model_strategy, train, test, input;
  bool split = false;
  std::string strategy_rule, bigram_match;
  std::size_t top_labels = 0;
  double tau = 0.0;
  CLI::Option *o_rule = nullptr, *o_top = nullptr, *o_tau = nullptr, *o_match = nullptr;
};

int cmd_eval(RunConfig c, const EvalArgs& a, std::ostream& out, std::ostream& err) {
  if (a.model_da.empty() && a.model_strategy.empty())
    throw Error("eval needs --model-da and/or --model-strategy");
  std::vector<AnnotatedDialog> train, test;
  json split_log = nullptr;
  if (!a.input.empty()) {
    if (!a.train.empty() || !a.test.empty()) throw Error("use either --input or --train/--test");
    Diagnostics diag;
    const auto dialogs = load_corpus_file(a.input, c.schema, &diag);
    flush_warnings(diag, err);
    const auto parts = split_corpus(dialogs, c.split);
    split_log = split_json(c, parts);
    train = from_dialogs(parts.train, c.schema);
    test = from_dialogs(parts.test, c.schema);
  } else {
    if (a.train.empty() || a.test.empty()) throw Error("eval needs --train and --test (or --input)");
    train = load_annotated(a.train, c.schema, err);
    test = load_annotated(a.test, c.schema, err);
  }

  if (a.o_rule->count() || a.o_top->count() || a.o_tau->count()) {
    StrategyRule rule = c.eval.strategy_rule.value_or(StrategyRule{});
    if (a.o_rule->count()) rule.kind = parse_rule_kind(a.strategy_rule);
    if (a.o_top->count()) rule.k = a.top_labels;
    if (a.o_tau->count()) rule.tau = a.tau;
    c.eval.strategy_rule = rule;
  }
  if (a.o_match->count()) c.eval.bigram_match = parse_bigram_match(a.bigram_match);

  std::optional<Fst> da, st;
  json models = json::object();
  if (!a.model_da.empty()) {
    da = load_model(a.model_da);
    check_alphabet(*da, a.model_da, stream_alphabet(c.schema, true));
    models["da"] = a.model_da;
  }
  if (!a.model_strategy.empty()) {
    st = load_model(a.model_strategy);
    check_alphabet(*st, a.model_strategy, stream_alphabet(c.schema, false));
    models["strategy"] = a.model_strategy;
  }
  const EvalReport report =
      compare_report(da ? &*da : nullptr, st ? &*st : nullptr, train, test, c.eval);

  json j = json::parse(report_to_json(report));
  j["seed"] = c.seed;
  j["models"] = models;
  j["split"] = split_log;
  j["train_dialogs"] = train.size();
  const std::string text = report_to_text(report);
  const auto dir = std::filesystem::path(c.out_dir);
  write_file(dir / "report.json", j.dump(2) + "\n");
  write_file(dir / "report.txt", text);
  out << text;
  return 0;
}

void print_step(const Fst& fst, StateId state, std::size_t top_k, std::ostream& out) {
  const Prediction p = predict_next(fst, state);
  out << "state " << state << ':';
  for (std::size_t i = 0; i < std::min(top_k, p.ranked.size()); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", p.ranked[i].second);
    out << (i ? ", " : " ") << fst.alphabet().name(p.ranked[i].first) << ' ' << buf;
  }
  out << '\n';
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int cmd_step(const std::string& model_path, std::size_t top_k, std::istream& in, std::ostream& out,
             std::ostream& err) {
  const Fst fst = load_model(model_path);
  StateId state = fst.start_state();
  print_step(fst, state, top_k, out);
  std::string line;
  while (std::getline(in, line)) {
    const std::string sym = trim(line);
    if (sym.empty()) continue;
    if (sym == "reset") {
      state = fst.start_state();
    } else if (auto id = fst.alphabet().find(sym)) {
      state = step(fst, state, *id);
    } else {
      err << "unknown symbol '" << sym << "'; alphabet: " << join(fst.alphabet().names()) << '\n';
      continue;
    }
    print_step(fst, state, top_k, out);
  }
  return 0;
}

int cmd_stats(const RunConfig& c, const std::string& input, std::ostream& out, std::ostream& err) {
  Diagnostics diag;
  const auto dialogs = load_corpus_file(input, c.schema, &diag);
  flush_warnings(diag, err);
  const CorpusStats s = corpus_stats(dialogs);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s.mean_turns);
  out << "dialogs " << s.num_dialogs << "\nmean_turns " << buf << "\nvocab " << s.vocab_size
      << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Learn and evaluate finite-state dialog models", "dialogfst"};
  app.require_subcommand(1);

  Common c_annotate, c_train, c_eval, c_step, c_dot, c_stats;
  std::string input, which = "da", model;
  bool split = false;
  std::size_t top_k = 3;
  double edge_threshold = 0.05;
  EvalArgs ea;

  auto* annotate = app.add_subcommand("annotate", "Label dialog acts and strategies");
  c_annotate.attach(annotate);
  annotate->add_option("--input", input, "Corpus JSONL")->required();

  auto* train = app.add_subcommand("train", "Train an FST on an annotated corpus");
  c_train.attach(train);
  train->add_option("--input", input, "Annotated corpus JSONL")->required();
  train->add_option("--which", which, "da or strategy");
  train->add_flag("--split", split, "Train on the seeded train split only");

  auto* eval = app.add_subcommand("eval", "Compare FSTs against baselines");
  c_eval.attach(eval);
  eval->add_option("--model-da", ea.model_da, "Dialog-act FST");
  eval->add_option("--model-strategy", ea.model_strategy, "Strategy FST");
  eval->add_option("--train", ea.train, "Annotated training corpus");
  eval->add_option("--test", ea.test, "Annotated test corpus");
  eval->add_option("--input", ea.input, "Annotated corpus split with the seed");
  ea.o_rule = eval->add_option("--strategy-rule", ea.strategy_rule, "top_k or threshold");
  ea.o_top = eval->add_option("--top-labels", ea.top_labels, "k for the top_k rule");
  ea.o_tau = eval->add_option("--tau", ea.tau, "Threshold for the threshold rule");
  ea.o_match = eval->add_option("--bigram-match", ea.bigram_match, "subset or exact");

  auto* stepc = app.add_subcommand("step", "Walk a model one symbol per input line");
  c_step.attach(stepc);
  stepc->add_option("--model", model, "Model file")->required();
  stepc->add_option("--top-k", top_k, "Symbols to show per state");

  auto* dot = app.add_subcommand("export-dot", "Print a model as a DOT digraph");
  c_dot.attach(dot);
  dot->add_option("--model", model, "Model file")->required();
  dot->add_option("--top-k", top_k, "Symbols to show per state");
  dot->add_option("--edge-threshold", edge_threshold, "Hide edges below this probability");

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  c_stats.attach(stats);
  stats->add_option("--input", input, "Corpus JSONL")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*annotate) {
      const RunConfig c = c_annotate.resolve();
      return cmd_annotate(c, input, c_annotate.given("out"), out, err);
    }
    if (*train) return cmd_train(c_train.resolve(), input, which, split, out);
    if (*eval) return cmd_eval(c_eval.resolve(), ea, out, err);
    if (*stepc) {
      c_step.resolve();
      return cmd_step(model, top_k, in, out, err);
    }
    if (*dot) {
      c_dot.resolve();
      DotOptions options;
      options.top_k = top_k;
      options.edge_threshold = edge_threshold;
      out << export_dot(load_model(model), options);
      return 0;
    }
    if (*stats) return cmd_stats(c_stats.resolve(), input, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace dialogfst::cli
