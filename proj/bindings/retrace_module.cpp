#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "retrace/analysis.hpp"
#include "retrace/automaton.hpp"
#include "retrace/classical.hpp"
#include "retrace/normalize.hpp"
#include "retrace/oracle.hpp"
#include "retrace/refined.hpp"
#include "retrace/reordering.hpp"

namespace py = pybind11;

namespace {

using namespace retrace;

/* The whole surface is string-first: alphabets arrive as declaration text
   ("letters: a b\nindep: a b"), expressions and words as strings.  An empty
   alphabet means the fully dependent one over the letters the expression
   mentions, matching the command line tool. */

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

auto load(const std::string& alphabet, const std::string& expr) -> IndependenceAlphabet {
  return alphabet.empty() ? infer_alphabet(expr) : parse_alphabet(alphabet);
}

auto tier_from(const std::string& name) -> std::optional<TheoryTier> {
  if (name == "none") return std::nullopt;
  if (name == "t0") return TheoryTier::T0;
  if (name == "t1") return TheoryTier::T1;
  throw std::invalid_argument("unknown tier '" + name + "'");
}

auto maybe_normalize(const Regexp& e, const std::optional<TheoryTier>& tier) -> Regexp {
  return tier ? normalize(e, *tier) : e;
}

auto render_all(const std::vector<Regexp>& parts) -> std::vector<std::string> {
  std::vector<std::string> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(render_regexp(p));
  return out;
}

auto format_all(const std::vector<Word>& words, const IndependenceAlphabet& sigma)
    -> std::vector<std::string> {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(format_word(w, sigma));
  return out;
}

auto py_derive(const std::string& alphabet, const std::string& expr, const std::string& word,
               const std::string& engine, const std::string& normalize_name) -> std::string {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  auto u = parse_word(word, sigma);
  auto tier = tier_from(normalize_name);
  Regexp d = [&] {
    if (engine == "brzozowski") return brzozowski_derive(e, u);
    if (engine == "brzozowski-reorder") return brz_reorder_derive(e, u, sigma);
    throw std::invalid_argument("derive expects a brzozowski-style engine, got '" + engine + "'");
  }();
  return render_regexp(maybe_normalize(d, tier));
}

auto py_reorderable(const std::string& alphabet, const std::string& expr, const std::string& word)
    -> std::string {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  return render_regexp(reorderable_part(e, parse_word(word, sigma), sigma));
}

auto py_parts(const std::string& alphabet, const std::string& expr, const std::string& word,
              const std::string& engine, const std::string& normalize_name)
    -> std::vector<std::string> {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  auto u = parse_word(word, sigma);
  auto tier = tier_from(normalize_name);
  std::vector<Regexp> parts = [&] {
    if (engine == "antimirov") return antimirov_parts(e, u);
    if (engine == "antimirov-reorder") return antimirov_reorder_parts(e, u, sigma);
    throw std::invalid_argument("parts expects an antimirov-style engine, got '" + engine + "'");
  }();
  if (tier) {
    std::set<Regexp, RegexpLess> dedup;
    for (const auto& p : parts) dedup.insert(normalize(p, *tier));
    parts.assign(dedup.begin(), dedup.end());
  }
  return render_all(parts);
}

auto py_refined_lists(const std::string& alphabet, const std::string& expr,
                      const std::string& word, std::optional<std::size_t> bound,
                      const std::string& normalize_name)
    -> std::vector<std::vector<std::string>> {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  auto tier = tier_from(normalize_name);
  std::vector<std::vector<std::string>> out;
  for (const auto& g : refined_derive(e, parse_word(word, sigma), sigma, bound)) {
    std::vector<std::string> row;
    row.reserve(g.size());
    for (const auto& r : g) row.push_back(render_regexp(maybe_normalize(r, tier)));
    out.push_back(std::move(row));
  }
  return out;
}

auto py_member(const std::string& alphabet, const std::string& expr, const std::string& word,
               const std::string& engine, std::optional<std::size_t> bound) -> bool {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  auto u = parse_word(word, sigma);
  if (bound && engine != "refined") {
    throw std::invalid_argument("bound applies to the refined engine only");
  }
  if (engine == "brzozowski") return nullable(brzozowski_derive(e, u));
  if (engine == "brzozowski-reorder") return nullable(brz_reorder_derive(e, u, sigma));
  if (engine == "antimirov") {
    for (const auto& p : antimirov_parts(e, u)) {
      if (nullable(p)) return true;
    }
    return false;
  }
  if (engine == "antimirov-reorder") {
    for (const auto& p : antimirov_reorder_parts(e, u, sigma)) {
      if (nullable(p)) return true;
    }
    return false;
  }
  if (engine == "refined") return refined_membership(e, u, sigma, bound);
  if (engine == "oracle") return closure_member_oracle(e, u, sigma);
  throw std::invalid_argument("unknown engine '" + engine + "'");
}

auto py_normalize(const std::string& alphabet, const std::string& expr, const std::string& tier)
    -> std::string {
  auto sigma = load(alphabet, expr);
  auto t = tier_from(tier);
  if (!t) throw std::invalid_argument("normalize expects tier 't0' or 't1'");
  return render_regexp(normalize(parse_regexp(expr, sigma), *t));
}

auto py_language_words(const std::string& alphabet, const std::string& expr, std::size_t max_len,
                       std::size_t cap) -> std::vector<std::string> {
  auto sigma = load(alphabet, expr);
  return format_all(enumerate_language(parse_regexp(expr, sigma), max_len, cap), sigma);
}

auto py_closure_words(const std::string& alphabet, const std::string& expr, std::size_t max_len)
    -> std::vector<std::string> {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
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
  return format_all(sorted, sigma);
}

auto py_trace_equivalent(const std::string& alphabet, const std::string& u, const std::string& v)
    -> bool {
  auto sigma = parse_alphabet(alphabet);
  return trace_equiv(parse_word(u, sigma), parse_word(v, sigma), sigma);
}

auto py_reorder_concat(const std::string& alphabet, const std::string& u, const std::string& v)
    -> std::vector<std::string> {
  auto sigma = parse_alphabet(alphabet);
  return format_all(reorder_concat(parse_word(u, sigma), parse_word(v, sigma), sigma), sigma);
}

auto py_scatter_degree(const std::string& alphabet, const std::string& u, const std::string& z,
                       const std::string& mode, std::optional<std::size_t> max_degree)
    -> std::optional<std::size_t> {
  auto sigma = parse_alphabet(alphabet);
  ScatterMode m = [&] {
    if (mode == "strict") return ScatterMode::Strict;
    if (mode == "prefix") return ScatterMode::PrefixEquiv;
    if (mode == "both") return ScatterMode::BothEquiv;
    throw std::invalid_argument("unknown scatter mode '" + mode + "'");
  }();
  auto witness = scatter_check(parse_word(u, sigma), parse_word(z, sigma), sigma, m, max_degree);
  if (!witness) return std::nullopt;
  return witness->degree();
}

auto py_word_connected(const std::string& alphabet, const std::string& w) -> bool {
  auto sigma = parse_alphabet(alphabet);
  return word_connected(parse_word(w, sigma), sigma);
}

auto py_language_connected(const std::string& alphabet, const std::string& expr) -> bool {
  auto sigma = load(alphabet, expr);
  return language_connected(parse_regexp(expr, sigma), sigma);
}

auto py_star_connected(const std::string& alphabet, const std::string& expr) -> bool {
  auto sigma = load(alphabet, expr);
  return star_connected(parse_regexp(expr, sigma), sigma);
}

auto py_check_rank(const std::string& alphabet, const std::string& expr, std::size_t bound,
                   std::size_t max_len, bool uniform,
                   const std::optional<std::vector<std::string>>& words) -> py::dict {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  RankVerdict v;
  if (uniform) {
    std::vector<Word> parsed;
    if (words) {
      for (const auto& w : *words) parsed.push_back(parse_word(w, sigma));
    }
    v = check_uniform_rank(e, sigma, bound, max_len, parsed);
  } else {
    if (words) throw std::invalid_argument("explicit words require uniform=True");
    v = check_rank(e, sigma, bound, max_len);
  }
  py::dict out;
  out["claim"] = v.claim == RankClaim::UniformRank ? "uniform-rank" : "rank";
  out["bound"] = v.bound;
  out["max_len"] = v.max_len;
  out["holds"] = v.holds;
  out["words_checked"] = v.words_checked;
  out["witness_word"] =
      v.witness_word ? py::object(py::str(format_word(*v.witness_word, sigma))) : py::none();
  if (v.witness_split) {
    out["witness_split"] = py::make_tuple(format_word(v.witness_split->first, sigma),
                                          format_word(v.witness_split->second, sigma));
  } else {
    out["witness_split"] = py::none();
  }
  return out;
}

auto build(const std::string& alphabet, const std::string& expr, const std::string& engine,
           const std::string& normalize_name, std::optional<std::size_t> bound, std::size_t budget)
    -> Automaton {
  auto sigma = load(alphabet, expr);
  auto e = parse_regexp(expr, sigma);
  auto tier = tier_from(normalize_name);
  AutomatonKind kind = [&] {
    if (engine == "brzozowski") return AutomatonKind::ClassicalBrzozowski;
    if (engine == "antimirov") return AutomatonKind::ClassicalAntimirov;
    if (engine == "brzozowski-reorder") return AutomatonKind::ReorderBrzozowski;
    if (engine == "antimirov-reorder") return AutomatonKind::ReorderAntimirov;
    if (engine == "refined") {
      return bound ? AutomatonKind::RefinedTruncated : AutomatonKind::RefinedUnbounded;
    }
    throw std::invalid_argument("no automaton for engine '" + engine + "'");
  }();
  if (bound && engine != "refined") {
    throw std::invalid_argument("bound applies to the refined engine only");
  }
  ExplorationBudget limits;
  limits.max_states = budget;
  return build_automaton(e, sigma, kind, bound, tier, limits);
}

auto py_automaton_json(const std::string& alphabet, const std::string& expr,
                       const std::string& engine, const std::string& normalize_name,
                       std::optional<std::size_t> bound, std::size_t budget) -> std::string {
  return export_json(build(alphabet, expr, engine, normalize_name, bound, budget));
}

auto py_automaton_dot(const std::string& alphabet, const std::string& expr,
                      const std::string& engine, const std::string& normalize_name,
                      std::optional<std::size_t> bound, std::size_t budget) -> std::string {
  return export_dot(build(alphabet, expr, engine, normalize_name, bound, budget));
}

}  // namespace

PYBIND11_MODULE(_retrace, m) {
  m.doc() = "derivatives of regular expressions over independence alphabets";

  m.def("derive", &py_derive, py::arg("alphabet"), py::arg("expr"), py::arg("word"),
        py::arg("engine") = "brzozowski-reorder", py::arg("normalize") = "none",
        "Word derivative with a deterministic engine, rendered back to a string.");
  m.def("reorderable_part", &py_reorderable, py::arg("alphabet"), py::arg("expr"), py::arg("word"),
        "Subexpression matching only words independent of every letter of the word.");
  m.def("parts", &py_parts, py::arg("alphabet"), py::arg("expr"), py::arg("word"),
        py::arg("engine") = "antimirov-reorder", py::arg("normalize") = "none",
        "Partial derivatives along a word with a set-valued engine.");
  m.def("refined_lists", &py_refined_lists, py::arg("alphabet"), py::arg("expr"), py::arg("word"),
        py::arg("bound") = py::none(), py::arg("normalize") = "none",
        "Gap lists reachable from [expr] along the word, optionally length-bounded.");
  m.def("member", &py_member, py::arg("alphabet"), py::arg("expr"), py::arg("word"),
        py::arg("engine") = "brzozowski-reorder", py::arg("bound") = py::none(),
        "Trace-closure membership (classical-language membership for the classical engines).");
  m.def("normalize", &py_normalize, py::arg("alphabet"), py::arg("expr"), py::arg("tier"),
        "Normal form of the expression under tier 't0' or 't1'.");
  m.def("language_words", &py_language_words, py::arg("alphabet"), py::arg("expr"),
        py::arg("max_len"), py::arg("cap") = 12,
        "Words of the plain language up to max_len, shortlex.");
  m.def("closure_words", &py_closure_words, py::arg("alphabet"), py::arg("expr"),
        py::arg("max_len"), "Words of the trace closure up to max_len, shortlex.");
  m.def("trace_equivalent", &py_trace_equivalent, py::arg("alphabet"), py::arg("u"), py::arg("v"),
        "Whether two words are equal up to swapping adjacent independent letters.");
  m.def("reorder_concat", &py_reorder_concat, py::arg("alphabet"), py::arg("u"), py::arg("v"),
        "All interleavings of u before v allowed by the independence relation.");
  m.def("scatter_degree", &py_scatter_degree, py::arg("alphabet"), py::arg("u"), py::arg("z"),
        py::arg("mode") = "both", py::arg("max_degree") = py::none(),
        "Minimal number of blocks u scatters into within z, or None.");
  m.def("word_connected", &py_word_connected, py::arg("alphabet"), py::arg("word"),
        "Whether the dependence graph restricted to the word's letters is connected.");
  m.def("language_connected", &py_language_connected, py::arg("alphabet"), py::arg("expr"),
        "Whether every word of the language is connected.");
  m.def("star_connected", &py_star_connected, py::arg("alphabet"), py::arg("expr"),
        "Whether every starred subterm has a connected language.");
  m.def("check_rank", &py_check_rank, py::arg("alphabet"), py::arg("expr"), py::arg("bound"),
        py::arg("max_len"), py::arg("uniform") = false, py::arg("words") = py::none(),
        "Verify a (uniform) rank bound by enumeration; returns the verdict as a dict.");
  m.def("automaton_json", &py_automaton_json, py::arg("alphabet"), py::arg("expr"),
        py::arg("engine") = "brzozowski-reorder", py::arg("normalize") = "none",
        py::arg("bound") = py::none(), py::arg("budget") = 4096,
        "Explored transition graph as a JSON document.");
  m.def("automaton_dot", &py_automaton_dot, py::arg("alphabet"), py::arg("expr"),
        py::arg("engine") = "brzozowski-reorder", py::arg("normalize") = "none",
        py::arg("bound") = py::none(), py::arg("budget") = 4096,
        "Explored transition graph in Graphviz dot format.");
}
