#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "retrace/analysis.hpp"
#include "retrace/automaton.hpp"
#include "retrace/classical.hpp"
#include "retrace/normalize.hpp"
#include "retrace/oracle.hpp"
#include "retrace/refined.hpp"
#include "retrace/reordering.hpp"

namespace {

using namespace retrace;
using nlohmann::ordered_json;

enum class Engine { Brzozowski, Antimirov, BrzReorder, AntimReorder, Refined, Oracle };

auto engine_from(const std::string& name) -> Engine {
  if (name == "brzozowski") return Engine::Brzozowski;
  if (name == "antimirov") return Engine::Antimirov;
  if (name == "brzozowski-reorder") return Engine::BrzReorder;
  if (name == "antimirov-reorder") return Engine::AntimReorder;
  if (name == "refined") return Engine::Refined;
  if (name == "oracle") return Engine::Oracle;
  throw CLI::ValidationError("--engine", "unknown engine '" + name + "'");
}

auto tier_from(const std::string& name) -> std::optional<TheoryTier> {
  if (name == "none") return std::nullopt;
  if (name == "t0") return TheoryTier::T0;
  if (name == "t1") return TheoryTier::T1;
  throw CLI::ValidationError("--normalize", "unknown tier '" + name + "'");
}

/* Letters mentioned in an expression, for the default fully dependent
   alphabet when none is supplied: quoted tokens and any character that is
   not part of the regexp syntax. */
auto infer_alphabet(const std::string& expr) -> IndependenceAlphabet {
  std::vector<std::string> letters;
  std::set<std::string> seen;
  auto push = [&](std::string s) {
    if (!s.empty() && seen.insert(s).second) letters.push_back(std::move(s));
  };
  const std::string syntax = "01+*() \t\r\n";
  for (std::size_t i = 0; i < expr.size(); ++i) {
    char c = expr[i];
    if (c == '\'') {
      auto end = expr.find('\'', i + 1);
      if (end == std::string::npos) break;  // the parser reports the error
      push(expr.substr(i + 1, end - i - 1));
      i = end;
    } else if (syntax.find(c) == std::string::npos) {
      push(std::string(1, c));
    }
  }
  IndependenceAlphabet sigma;
  for (auto& s : letters) sigma.add_letter(std::move(s));
  return sigma;
}

auto load_alphabet(const std::string& spec, const std::string& expr) -> IndependenceAlphabet {
  if (spec.empty()) return infer_alphabet(expr);
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot read alphabet file '" + spec + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_alphabet(text.str());
  }
  // Not a file: the value itself is a declaration ("letters: a b; indep: a b").
  if (spec.find(':') == std::string::npos) {
    throw std::runtime_error("alphabet '" + spec + "' is neither a file nor a declaration");
  }
  return parse_alphabet(spec);
}

auto show_word(const Word& w, const IndependenceAlphabet& sigma) -> std::string {
  return w.empty() ? std::string("ε") : format_word(w, sigma);
}

auto word_list_json(const std::vector<Word>& words, const IndependenceAlphabet& sigma)
    -> ordered_json {
  auto arr = ordered_json::array();
  for (const auto& w : words) arr.push_back(format_word(w, sigma));
  return arr;
}

/* All words of length <= max_len in the trace closure: permute the language
   words instead of sweeping the whole alphabet power set. */
auto closure_words(const Regexp& e, const IndependenceAlphabet& sigma, std::size_t max_len)
    -> std::vector<Word> {
  std::set<Word> out;
  for (const auto& z : enumerate_language(e, max_len, std::max<std::size_t>(max_len, 12))) {
    std::vector<Word> queue{z};
    out.insert(z);
    while (!queue.empty()) {
      Word w = std::move(queue.back());
      queue.pop_back();
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!sigma.independent(w[i], w[i + 1])) continue;
        Word s = w;
        std::swap(s[i], s[i + 1]);
        if (out.insert(s).second) queue.push_back(s);
      }
    }
  }
  std::vector<Word> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end(), shortlex_less);
  return sorted;
}

struct Options {
  std::string alphabet;
  std::string expr;
  std::string word;
  bool word_given = false;
  std::string letter;
  std::string engine;
  std::optional<std::size_t> bound;
  std::string normalize_name = "none";
  std::size_t max_len = 8;
  bool max_len_given = false;
  std::size_t budget = 4096;
  bool json = false;
  bool strict = false;
  std::string dot_path;
  bool uniform = false;
};

void require_refined_bound(const Options& opt, Engine engine) {
  if (opt.bound && engine != Engine::Refined) {
    throw CLI::ValidationError("--bound", "--bound is only valid with --engine refined");
  }
}

auto emit(const Options& opt, const ordered_json& payload, const std::string& text) -> void {
  if (opt.json) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

auto run_derive(const Options& opt) -> int {
  auto engine = engine_from(opt.engine);
  require_refined_bound(opt, engine);
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);
  auto w = parse_word(opt.word, sigma);
  auto tier = tier_from(opt.normalize_name);

  ordered_json payload;
  payload["command"] = "derive";
  payload["expr"] = opt.expr;
  payload["word"] = opt.word;
  payload["engine"] = opt.engine;

  switch (engine) {
    case Engine::Brzozowski:
    case Engine::BrzReorder: {
      auto d = engine == Engine::Brzozowski ? brzozowski_derive(e, w)
                                            : brz_reorder_derive(e, w, sigma);
      if (tier) d = normalize(d, *tier);
      auto text = render_regexp(d);
      payload["result"] = text;
      emit(opt, payload, text);
      return 0;
    }
    case Engine::Oracle: {
      auto lang = enumerate_language(e, opt.max_len, std::max<std::size_t>(opt.max_len, 12));
      auto words = semantic_reorder_derivative(lang, w, sigma);
      payload["result_words"] = word_list_json(words, sigma);
      std::string text;
      for (const auto& v : words) {
        text += show_word(v, sigma);
        text += "\n";
      }
      if (!text.empty()) text.pop_back();
      emit(opt, payload, text);
      return 0;
    }
    case Engine::Antimirov:
    case Engine::AntimReorder:
      throw CLI::ValidationError("--engine", "set-valued engines answer via `parts`");
    case Engine::Refined:
      throw CLI::ValidationError("--engine", "the refined engine answers via `refine`");
  }
  return 2;
}

auto run_parts(const Options& opt) -> int {
  auto engine = engine_from(opt.engine);
  require_refined_bound(opt, engine);
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);
  if (!opt.letter.empty() && opt.word_given) {
    throw CLI::ValidationError("--letter", "give either --letter or --word, not both");
  }
  Word w = opt.letter.empty() ? parse_word(opt.word, sigma) : parse_word(opt.letter, sigma);
  if (!opt.letter.empty() && w.size() != 1) {
    throw CLI::ValidationError("--letter", "--letter takes exactly one letter");
  }
  auto tier = tier_from(opt.normalize_name);

  ordered_json payload;
  payload["command"] = "parts";
  payload["expr"] = opt.expr;
  payload["word"] = format_word(w, sigma);
  payload["engine"] = opt.engine;

  if (engine == Engine::Oracle) {
    auto lang = enumerate_language(e, opt.max_len, std::max<std::size_t>(opt.max_len, 12));
    auto words = semantic_reorder_derivative(lang, w, sigma);
    payload["result_words"] = word_list_json(words, sigma);
    std::string text;
    for (const auto& v : words) {
      text += show_word(v, sigma);
      text += "\n";
    }
    if (!text.empty()) text.pop_back();
    emit(opt, payload, text);
    return 0;
  }
  if (engine != Engine::Antimirov && engine != Engine::AntimReorder) {
    throw CLI::ValidationError("--engine", "`parts` needs antimirov, antimirov-reorder, or oracle");
  }
  auto parts = engine == Engine::Antimirov ? antimirov_parts(e, w)
                                           : antimirov_reorder_parts(e, w, sigma);
  if (tier) {
    std::set<Regexp, RegexpLess> normed;
    for (const auto& p : parts) normed.insert(normalize(p, *tier));
    parts.assign(normed.begin(), normed.end());
  }
  auto arr = ordered_json::array();
  std::string text;
  for (const auto& p : parts) {
    auto r = render_regexp(p);
    arr.push_back(r);
    if (!text.empty()) text += ", ";
    text += r;
  }
  payload["parts"] = arr;
  emit(opt, payload, text);
  return 0;
}

auto run_refine(const Options& opt) -> int {
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);
  auto w = parse_word(opt.word, sigma);
  auto tier = tier_from(opt.normalize_name);

  auto lists = refined_derive(e, w, sigma, opt.bound);
  if (tier) {
    std::set<StateList, StateListLess> normed;
    for (const auto& g : lists) {
      StateList n;
      for (const auto& r : g) n.push_back(normalize(r, *tier));
      normed.insert(std::move(n));
    }
    lists.assign(normed.begin(), normed.end());
  }

  ordered_json payload;
  payload["command"] = "refine";
  payload["expr"] = opt.expr;
  payload["word"] = opt.word;
  if (opt.bound) payload["bound"] = *opt.bound;
  auto arr = ordered_json::array();
  std::string text;
  for (const auto& g : lists) {
    auto row = ordered_json::array();
    std::string line = "[";
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto r = render_regexp(g[i]);
      row.push_back(r);
      if (i > 0) line += ", ";
      line += r;
    }
    line += "]";
    arr.push_back(row);
    if (!text.empty()) text += "\n";
    text += line;
  }
  payload["lists"] = arr;
  emit(opt, payload, text);
  return 0;
}

auto run_member(const Options& opt) -> int {
  auto engine = engine_from(opt.engine);
  require_refined_bound(opt, engine);
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);
  auto w = parse_word(opt.word, sigma);

  bool member = false;
  switch (engine) {
    case Engine::Brzozowski:
      member = nullable(brzozowski_derive(e, w));
      break;
    case Engine::Antimirov: {
      for (const auto& p : antimirov_parts(e, w)) member = member || nullable(p);
      break;
    }
    case Engine::BrzReorder:
      member = nullable(brz_reorder_derive(e, w, sigma));
      break;
    case Engine::AntimReorder: {
      for (const auto& p : antimirov_reorder_parts(e, w, sigma)) member = member || nullable(p);
      break;
    }
    case Engine::Refined:
      member = refined_membership(e, w, sigma, opt.bound);
      break;
    case Engine::Oracle:
      member = closure_member_oracle(e, w, sigma);
      break;
  }

  ordered_json payload;
  payload["command"] = "member";
  payload["expr"] = opt.expr;
  payload["word"] = opt.word;
  payload["engine"] = opt.engine;
  if (opt.bound) payload["bound"] = *opt.bound;
  payload["member"] = member;
  emit(opt, payload, member ? "true" : "false");
  return opt.strict && !member ? 1 : 0;
}

auto run_build(const Options& opt) -> int {
  auto engine = engine_from(opt.engine);
  require_refined_bound(opt, engine);
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);
  auto tier = tier_from(opt.normalize_name);

  AutomatonKind kind;
  switch (engine) {
    case Engine::Brzozowski:
      kind = AutomatonKind::ClassicalBrzozowski;
      break;
    case Engine::Antimirov:
      kind = AutomatonKind::ClassicalAntimirov;
      break;
    case Engine::BrzReorder:
      kind = AutomatonKind::ReorderBrzozowski;
      break;
    case Engine::AntimReorder:
      kind = AutomatonKind::ReorderAntimirov;
      break;
    case Engine::Refined:
      kind = opt.bound ? AutomatonKind::RefinedTruncated : AutomatonKind::RefinedUnbounded;
      break;
    case Engine::Oracle:
      throw CLI::ValidationError("--engine", "the oracle does not build automata");
  }

  ExplorationBudget budget;
  budget.max_states = opt.budget;
  auto m = build_automaton(e, sigma, kind, opt.bound, tier, budget);

  if (!opt.dot_path.empty()) {
    std::ofstream out(opt.dot_path);
    if (!out) throw std::runtime_error("cannot write '" + opt.dot_path + "'");
    out << export_dot(m);
  }
  if (opt.json) {
    std::cout << export_json(m);
    return 0;
  }
  std::size_t finals = 0;
  for (bool f : m.finals) finals += f ? 1 : 0;
  std::cout << "kind: " << kind_name(m.kind, m.bound) << "\n"
            << "states: " << m.states.size() << " (" << finals << " final)\n"
            << "transitions: " << m.transitions.size() << "\n"
            << "deterministic: " << (m.deterministic ? "true" : "false") << "\n"
            << "complete: " << (m.complete ? "true" : "false") << "\n";
  return 0;
}

auto run_analyze(const Options& opt) -> int {
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);
  bool lang = language_connected(e, sigma);
  bool star = star_connected(e, sigma);

  ordered_json payload;
  payload["command"] = "analyze";
  payload["expr"] = opt.expr;
  payload["language_connected"] = lang;
  payload["star_connected"] = star;
  std::ostringstream text;
  text << "language-connected: " << (lang ? "true" : "false") << "\n"
       << "star-connected: " << (star ? "true" : "false");
  emit(opt, payload, text.str());
  return 0;
}

auto run_rank(const Options& opt) -> int {
  if (!opt.bound) throw CLI::ValidationError("--bound", "rank checks need --bound");
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);

  std::vector<Word> words;
  if (opt.word_given) words.push_back(parse_word(opt.word, sigma));
  auto verdict = opt.uniform ? check_uniform_rank(e, sigma, *opt.bound, opt.max_len, words)
                             : check_rank(e, sigma, *opt.bound, opt.max_len);

  ordered_json payload;
  payload["command"] = "rank";
  payload["expr"] = opt.expr;
  payload["claim"] = opt.uniform ? "uniform-rank" : "rank";
  payload["bound"] = verdict.bound;
  payload["max_len"] = verdict.max_len;
  payload["holds"] = verdict.holds;
  payload["words_checked"] = verdict.words_checked;
  payload["witness_word"] =
      verdict.witness_word ? ordered_json(format_word(*verdict.witness_word, sigma))
                           : ordered_json(nullptr);
  if (verdict.witness_split) {
    payload["witness_split"] = {format_word(verdict.witness_split->first, sigma),
                                format_word(verdict.witness_split->second, sigma)};
  } else {
    payload["witness_split"] = nullptr;
  }

  std::ostringstream text;
  text << (opt.uniform ? "uniform rank <= " : "rank <= ") << *opt.bound << ": "
       << (verdict.holds ? "holds up to length " + std::to_string(verdict.max_len)
                         : "refuted at w=" + show_word(*verdict.witness_word, sigma));
  if (!verdict.holds && verdict.witness_split) {
    text << " split=(" << show_word(verdict.witness_split->first, sigma) << ", "
         << show_word(verdict.witness_split->second, sigma) << ")";
  }
  text << " (checked " << verdict.words_checked << " words)";
  emit(opt, payload, text.str());
  return opt.strict && !verdict.holds ? 1 : 0;
}

auto run_oracle(const Options& opt) -> int {
  auto sigma = load_alphabet(opt.alphabet, opt.expr);
  auto e = parse_regexp(opt.expr, sigma);

  ordered_json payload;
  payload["command"] = "oracle";
  payload["expr"] = opt.expr;

  if (opt.word_given) {
    auto w = parse_word(opt.word, sigma);
    bool member = closure_member_oracle(e, w, sigma);
    payload["word"] = opt.word;
    payload["member"] = member;
    emit(opt, payload, member ? "true" : "false");
    return opt.strict && !member ? 1 : 0;
  }
  if (!opt.max_len_given) {
    throw CLI::ValidationError("--word", "oracle needs --word (membership) or --max-len (listing)");
  }
  auto words = closure_words(e, sigma, opt.max_len);
  payload["max_len"] = opt.max_len;
  payload["words"] = word_list_json(words, sigma);
  std::string text;
  for (const auto& v : words) {
    text += show_word(v, sigma);
    text += "\n";
  }
  if (!text.empty()) text.pop_back();
  emit(opt, payload, text);
  return 0;
}

}  // namespace

auto main(int argc, char** argv) -> int {
  CLI::App app{"derivatives of regular expressions over independence alphabets"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_expr = true) {
    cmd->add_option("--alphabet", opt.alphabet,
                    "alphabet file or inline declaration ('letters: a b; indep: a b'); "
                    "defaults to the expression's letters, fully dependent");
    auto* expr = cmd->add_option("--expr", opt.expr, "regular expression");
    if (needs_expr) expr->required();
    cmd->add_flag("--json", opt.json, "machine readable output");
  };

  auto* derive = app.add_subcommand("derive", "word derivative as a single regexp");
  add_common(derive);
  derive->add_option("--word", opt.word, "input word")->capture_default_str();
  derive->add_option("--engine", opt.engine, "brzozowski | brzozowski-reorder | oracle")
      ->required();
  derive->add_option("--normalize", opt.normalize_name, "none | t0 | t1")->capture_default_str();
  derive->add_option("--bound", opt.bound, "block bound (refined engine only)");
  derive->add_option("--max-len", opt.max_len, "language cutoff for the oracle engine");

  auto* parts = app.add_subcommand("parts", "set-valued derivative, one regexp per part");
  add_common(parts);
  parts->add_option("--letter", opt.letter, "single letter to consume");
  parts->add_option("--word", opt.word, "word to consume");
  parts->add_option("--engine", opt.engine, "antimirov | antimirov-reorder | oracle")->required();
  parts->add_option("--normalize", opt.normalize_name, "none | t0 | t1")->capture_default_str();
  parts->add_option("--bound", opt.bound, "block bound (refined engine only)");
  parts->add_option("--max-len", opt.max_len, "language cutoff for the oracle engine");

  auto* refine = app.add_subcommand("refine", "refined derivative: reachable gap lists");
  add_common(refine);
  refine->add_option("--word", opt.word, "input word")->capture_default_str();
  refine->add_option("--bound", opt.bound, "maximum number of consumed blocks");
  refine->add_option("--normalize", opt.normalize_name, "none | t0 | t1")->capture_default_str();

  auto* member = app.add_subcommand("member", "word membership (closure for reordering engines)");
  add_common(member);
  member->add_option("--word", opt.word, "input word")->capture_default_str();
  member
      ->add_option("--engine", opt.engine,
                   "brzozowski | antimirov | brzozowski-reorder | antimirov-reorder | refined | "
                   "oracle")
      ->required();
  member->add_option("--bound", opt.bound, "block bound (refined engine only)");
  member->add_flag("--strict", opt.strict, "exit 1 on a negative answer");

  auto* build = app.add_subcommand("build", "explore the derivative automaton");
  add_common(build);
  build->add_option("--engine", opt.engine,
                    "brzozowski | antimirov | brzozowski-reorder | antimirov-reorder | refined")
      ->required();
  build->add_option("--bound", opt.bound, "truncate refined lists (refined engine only)");
  build->add_option("--normalize", opt.normalize_name, "state identity: none | t0 | t1")
      ->capture_default_str();
  build->add_option("--budget", opt.budget, "state budget")->capture_default_str();
  build->add_option("--dot", opt.dot_path, "write a DOT rendering to this path");

  auto* analyze = app.add_subcommand("analyze", "connectedness of the language and the expression");
  add_common(analyze);

  auto* rank = app.add_subcommand("rank", "bounded scattering rank check");
  add_common(rank);
  rank->add_option("--bound", opt.bound, "rank bound N")->required();
  rank->add_option("--max-len", opt.max_len, "sweep closure words up to this length")
      ->capture_default_str();
  rank->add_flag("--uniform", opt.uniform, "one witness must serve all splits");
  rank->add_option("--word", opt.word, "check only this closure word");
  rank->add_flag("--strict", opt.strict, "exit 1 when refuted");

  auto* oracle = app.add_subcommand("oracle", "brute-force closure membership or listing");
  add_common(oracle);
  oracle->add_option("--word", opt.word, "membership query");
  oracle->add_option("--max-len", opt.max_len, "list closure words up to this length");
  oracle->add_flag("--strict", opt.strict, "exit 1 on a negative answer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto* cmd : {parts, rank, oracle}) {
    if (cmd->parsed() && cmd->count("--word") > 0) opt.word_given = true;
  }
  if (oracle->parsed() && oracle->count("--max-len") > 0) opt.max_len_given = true;

  try {
    if (derive->parsed()) return run_derive(opt);
    if (parts->parsed()) return run_parts(opt);
    if (refine->parsed()) return run_refine(opt);
    if (member->parsed()) return run_member(opt);
    if (build->parsed()) return run_build(opt);
    if (analyze->parsed()) return run_analyze(opt);
    if (rank->parsed()) return run_rank(opt);
    if (oracle->parsed()) return run_oracle(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
