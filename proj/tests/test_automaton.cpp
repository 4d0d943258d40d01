#include "retrace/automaton.hpp"

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "retrace/classical.hpp"
#include "retrace/oracle.hpp"
#include "retrace/reordering.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>

using namespace retrace;

namespace {

constexpr AutomatonKind kAllKinds[] = {
    AutomatonKind::ClassicalBrzozowski, AutomatonKind::ClassicalAntimirov,
    AutomatonKind::ReorderBrzozowski,   AutomatonKind::ReorderAntimirov,
    AutomatonKind::RefinedUnbounded,    AutomatonKind::RefinedTruncated,
};

auto needs_bound(AutomatonKind kind) -> std::optional<std::size_t> {
  return kind == AutomatonKind::RefinedTruncated ? std::optional<std::size_t>(2) : std::nullopt;
}

auto words_upto(const IndependenceAlphabet& sigma, std::size_t max_len) -> std::vector<Word> {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (LetterId a = 0; a < sigma.size(); ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(w);
      }
    }
    begin = end;
  }
  return out;
}

auto word_set(const IndependenceAlphabet& sigma, const std::vector<std::string>& texts)
    -> std::vector<Word> {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(parse_word(t, sigma));
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace

TEST_CASE("kind names") {
  CHECK(kind_name(AutomatonKind::ClassicalBrzozowski, {}) == "classical-brzozowski");
  CHECK(kind_name(AutomatonKind::ClassicalAntimirov, {}) == "classical-antimirov");
  CHECK(kind_name(AutomatonKind::ReorderBrzozowski, {}) == "reorder-brzozowski");
  CHECK(kind_name(AutomatonKind::ReorderAntimirov, {}) == "reorder-antimirov");
  CHECK(kind_name(AutomatonKind::RefinedUnbounded, {}) == "refined-unbounded");
  CHECK(kind_name(AutomatonKind::RefinedTruncated, 2) == "refined-truncated(2)");
}

TEST_CASE("building rejects a missing bound and an empty budget") {
  auto sigma = th::ab_alphabet();
  auto e = parse_regexp("a", sigma);
  CHECK_THROWS_AS((void)build_automaton(e, sigma, AutomatonKind::RefinedTruncated, {}, {}, {}),
                  std::invalid_argument);
  ExplorationBudget empty;
  empty.max_states = 0;
  CHECK_THROWS_AS(
      (void)build_automaton(e, sigma, AutomatonKind::ClassicalBrzozowski, {}, {}, empty),
      std::invalid_argument);
}

TEST_CASE("the empty language gives a single dead state everywhere") {
  auto sigma = th::ab_alphabet();
  auto zero = parse_regexp("0", sigma);
  for (auto kind : kAllKinds) {
    auto m = build_automaton(zero, sigma, kind, needs_bound(kind), {}, {});
    CHECK(m.complete);
    if (kind == AutomatonKind::ClassicalBrzozowski || kind == AutomatonKind::ReorderBrzozowski) {
      // The dead state loops on itself deterministically.
      CHECK(m.states.size() == 1);
      CHECK(m.transitions.size() == sigma.size());
    } else {
      CHECK(m.states.size() == 1);
      CHECK(m.transitions.empty());
    }
    CHECK_FALSE(m.finals[m.initial]);
    CHECK_FALSE(accepts(m, {}));
  }
}

TEST_CASE("the unit language accepts the empty word everywhere") {
  auto sigma = th::ab_alphabet();
  auto one = parse_regexp("1", sigma);
  for (auto kind : kAllKinds) {
    auto m = build_automaton(one, sigma, kind, needs_bound(kind), {}, {});
    CHECK(accepts(m, {}));
    CHECK(m.finals[m.initial]);
  }
}

TEST_CASE("structural invariants of built automata") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    auto e = th::random_regexp(rng, sigma, 8);
    for (auto kind : kAllKinds) {
      ExplorationBudget budget;
      budget.max_states = 128;
      auto m = build_automaton(e, sigma, kind, needs_bound(kind), TheoryTier::T1, budget);
      CHECK(m.states.size() == m.finals.size());
      CHECK(m.states.size() == m.labels.size());
      CHECK(m.initial == 0);
      std::set<std::tuple<std::size_t, LetterId, std::size_t>> seen;
      std::map<std::pair<std::size_t, LetterId>, int> fanout;
      for (const auto& t : m.transitions) {
        CHECK(t.from < m.states.size());
        CHECK(t.to < m.states.size());
        CHECK(t.letter < sigma.size());
        CHECK(seen.emplace(t.from, t.letter, t.to).second);
        ++fanout[{t.from, t.letter}];
      }
      if (m.deterministic) {
        for (const auto& [edge, count] : fanout) CHECK(count == 1);
      }
      CHECK(m.deterministic == (kind == AutomatonKind::ClassicalBrzozowski ||
                                kind == AutomatonKind::ReorderBrzozowski));
      for (std::size_t s = 0; s < m.states.size(); ++s) {
        CHECK(m.finals[s] == state_final(kind, m.states[s]));
      }
    }
  }
}

TEST_CASE("budgeted exploration of an infinite state space") {
  auto sigma = th::ab_alphabet();
  auto e = parse_regexp("(ab)*", sigma);

  ExplorationBudget tight;
  tight.max_states = 20;
  auto m = build_automaton(e, sigma, AutomatonKind::ReorderBrzozowski, {}, TheoryTier::T1, tight);
  CHECK_FALSE(m.complete);
  CHECK(m.states.size() == 20);

  // A slightly larger budget reaches the whole derivative chain along b..b.
  ExplorationBudget wider;
  wider.max_states = 32;
  auto big = build_automaton(e, sigma, AutomatonKind::ReorderBrzozowski, {}, TheoryTier::T1, wider);
  CHECK_FALSE(big.complete);
  std::set<StateList, StateListLess> states(big.states.begin(), big.states.end());
  std::set<Regexp, RegexpLess> chain;
  auto d = e;
  for (int n = 0; n <= 10; ++n) {
    auto nf = normalize(d, TheoryTier::T1);
    CHECK(chain.insert(nf).second);  // pairwise distinct normal forms
    CHECK(states.count({nf}) == 1);
    d = brz_reorder_derive(d, sigma.id("b"), sigma);
  }

  // The incomplete graph still answers membership by re-deriving on demand.
  CHECK(accepts(m, parse_word("bbaa", sigma)));
  CHECK_FALSE(accepts(m, parse_word("bbb", sigma)));
}

TEST_CASE("a depth limit truncates exploration") {
  auto sigma = th::ab_alphabet();
  auto e = parse_regexp("(ab)*", sigma);
  ExplorationBudget budget;
  budget.max_depth = 1;
  auto m = build_automaton(e, sigma, AutomatonKind::ClassicalBrzozowski, {}, TheoryTier::T1, budget);
  CHECK_FALSE(m.complete);
  CHECK(m.states.size() == 3);  // (ab)*, b(ab)*, 0
  for (const auto& t : m.transitions) CHECK(t.from == m.initial);
}

TEST_CASE("star connected inputs explore to completion") {
  auto sigma = th::ab_alphabet();
  ExplorationBudget budget;
  budget.max_states = 200;
  auto m = build_automaton(parse_regexp("a*b*", sigma), sigma, AutomatonKind::ReorderAntimirov, {},
                           TheoryTier::T1, budget);
  CHECK(m.complete);

  auto sigma3 = th::abc_partial();
  auto glued = build_automaton(parse_regexp("(c(a+b))*", sigma3), sigma3,
                               AutomatonKind::ReorderAntimirov, {}, TheoryTier::T1, budget);
  CHECK(glued.complete);
}

TEST_CASE("truncated refined exploration is finite") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(7);
  for (int i = 0; i < 12; ++i) {
    auto e = th::random_regexp(rng, sigma, 8);
    auto m = build_automaton(e, sigma, AutomatonKind::RefinedTruncated, 2, {}, {});
    CHECK(m.complete);
    for (const auto& key : m.states) {
      CHECK(key.size() >= 1);
      CHECK(key.size() <= 3);
    }
  }
}

TEST_CASE("acceptance goldens") {
  auto sigma = th::ab_alphabet();
  auto worked = build_automaton(parse_regexp("(aa+ab+b)*", sigma), sigma,
                                AutomatonKind::ReorderBrzozowski, {}, TheoryTier::T1,
                                ExplorationBudget{64, {}});
  CHECK(accepts(worked, parse_word("bbaa", sigma)));

  auto sigma3 = th::abc_partial();
  auto ec = parse_regexp("a*b*c(ab)*(a*+b*)+(ab)*(a*+b*)ca*b*", sigma3);
  auto truncated = build_automaton(ec, sigma3, AutomatonKind::RefinedTruncated, 2, {}, {});
  CHECK(truncated.complete);
  CHECK_FALSE(accepts(truncated, parse_word("aaabbbcaaabbb", sigma3)));
  CHECK(closure_member_oracle(ec, parse_word("aaabbbcaaabbb", sigma3), sigma3));
}

TEST_CASE("bounded language goldens") {
  auto sigma = th::ab_alphabet();
  auto e = parse_regexp("(ab)*", sigma);
  auto reorder = build_automaton(e, sigma, AutomatonKind::ReorderAntimirov, {}, TheoryTier::T1,
                                 ExplorationBudget{64, {}});
  CHECK(bounded_language(reorder, 2) == word_set(sigma, {"", "ab", "ba"}));

  auto classical = build_automaton(e, sigma, AutomatonKind::ClassicalAntimirov, {}, {}, {});
  CHECK(classical.complete);
  CHECK(bounded_language(classical, 2) == word_set(sigma, {"", "ab"}));

  auto single = parse_alphabet("letters: a");
  auto star = build_automaton(parse_regexp("a*", single), single,
                              AutomatonKind::RefinedTruncated, 1, {}, {});
  CHECK(star.complete);
  CHECK(bounded_language(star, 3) == word_set(single, {"", "a", "aa", "aaa"}));

  CHECK_THROWS_AS((void)bounded_language(classical, 40), std::invalid_argument);
}

TEST_CASE("acceptance matches the oracle for every kind") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(31337);
  auto words = words_upto(sigma, 4);
  ExplorationBudget budget;
  budget.max_states = 64;
  for (int i = 0; i < 20; ++i) {
    auto e = th::random_regexp(rng, sigma, 8);
    std::vector<Automaton> machines;
    for (auto kind : kAllKinds) {
      machines.push_back(build_automaton(e, sigma, kind, needs_bound(kind), TheoryTier::T1, budget));
    }
    for (const auto& w : words) {
      bool classical = nullable(brzozowski_derive(e, w));
      bool closure = closure_member_oracle(e, w, sigma);
      CHECK(accepts(machines[0], w) == classical);
      CHECK(accepts(machines[1], w) == classical);
      CHECK(accepts(machines[2], w) == closure);
      CHECK(accepts(machines[3], w) == closure);
      CHECK(accepts(machines[4], w) == closure);
      if (accepts(machines[5], w)) CHECK(closure);  // truncation only under-approximates
    }
  }
}

TEST_CASE("quotiented deterministic and nondeterministic reordering automata agree") {
  auto sigma = th::ab_alphabet();
  std::mt19937 rng(808);
  ExplorationBudget budget;
  budget.max_states = 64;
  for (int i = 0; i < 25; ++i) {
    auto e = th::random_regexp(rng, sigma, 8);
    auto det = build_automaton(e, sigma, AutomatonKind::ReorderBrzozowski, {}, TheoryTier::T1, budget);
    auto nondet =
        build_automaton(e, sigma, AutomatonKind::ReorderAntimirov, {}, TheoryTier::T1, budget);
    CHECK(bounded_language(det, 4) == bounded_language(nondet, 4));
  }
}

TEST_CASE("dot export") {
  auto single = parse_alphabet("letters: a");
  auto unit = build_automaton(parse_regexp("1", single), single,
                              AutomatonKind::ClassicalBrzozowski, {}, TheoryTier::T1, {});
  auto dot = export_dot(unit);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("rankdir=LR") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("__start -> s0") != std::string::npos);

  auto letter = build_automaton(parse_regexp("a", single), single,
                                AutomatonKind::ClassicalBrzozowski, {}, TheoryTier::T1, {});
  auto dot2 = export_dot(letter);
  CHECK(dot2.find("s0 -> s1 [label=\"a\"]") != std::string::npos);
}

TEST_CASE("json export follows the documented schema") {
  auto sigma = th::ab_alphabet();
  auto m = build_automaton(parse_regexp("(ab)*", sigma), sigma, AutomatonKind::RefinedTruncated, 2,
                           {}, {});
  auto j = nlohmann::json::parse(export_json(m));
  CHECK(j["kind"] == "refined-truncated(2)");
  CHECK(j["deterministic"] == false);
  CHECK(j["complete"] == m.complete);
  REQUIRE(j["states"].is_array());
  REQUIRE(j["states"].size() == m.states.size());
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    const auto& s = j["states"][i];
    CHECK(s["id"] == i);
    CHECK(s["label"].is_string());
    CHECK(s["initial"] == (i == m.initial));
    CHECK(s["final"] == static_cast<bool>(m.finals[i]));
  }
  CHECK(j["states"][0]["label"] == "[(ab)*]");
  REQUIRE(j["transitions"].is_array());
  REQUIRE(j["transitions"].size() == m.transitions.size());
  for (std::size_t i = 0; i < j["transitions"].size(); ++i) {
    const auto& t = j["transitions"][i];
    CHECK(t["from"] == m.transitions[i].from);
    CHECK(t["letter"] == sigma.symbol(m.transitions[i].letter));
    CHECK(t["to"] == m.transitions[i].to);
  }
}
