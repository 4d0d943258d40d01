#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "retrace/alphabet.hpp"
#include "retrace/normalize.hpp"
#include "retrace/refined.hpp"
#include "retrace/regexp.hpp"

namespace retrace {

enum class AutomatonKind {
  ClassicalBrzozowski,
  ClassicalAntimirov,
  ReorderBrzozowski,
  ReorderAntimirov,
  RefinedUnbounded,
  RefinedTruncated,
};

/* "classical-brzozowski", ..., "refined-truncated(2)". */
[[nodiscard]] auto kind_name(AutomatonKind kind, std::optional<std::size_t> bound) -> std::string;

struct ExplorationBudget {
  std::size_t max_states = 4096;
  std::optional<std::size_t> max_depth;
};

/* Explored transition graph.  State keys are StateLists — singletons for the
   expression-valued kinds — normalized by the tier when one is selected;
   labels show the representative first discovered, before normalization. */
struct Automaton {
  AutomatonKind kind = AutomatonKind::ClassicalBrzozowski;
  std::optional<std::size_t> bound;  // RefinedTruncated only
  std::optional<TheoryTier> tier;
  IndependenceAlphabet alphabet;

  struct Transition {
    std::size_t from;
    LetterId letter;
    std::size_t to;
  };

  std::vector<StateList> states;
  std::vector<std::string> labels;
  std::vector<bool> finals;
  std::vector<Transition> transitions;
  std::size_t initial = 0;
  bool deterministic = false;
  bool complete = true;
};

/* One exploration step of the chosen engine from a state key.  Results are
   canonically sorted and deduplicated (after tier normalization if any). */
[[nodiscard]] auto automaton_step(AutomatonKind kind, const StateList& key, LetterId a,
                                  const IndependenceAlphabet& sigma,
                                  std::optional<TheoryTier> tier, std::optional<std::size_t> bound)
    -> std::vector<StateList>;

[[nodiscard]] auto state_final(AutomatonKind kind, const StateList& key) -> bool;

/* Breadth-first closure of the engine's step function from e.  Stops adding
   states once the budget is hit and reports complete=false; the partial
   graph stays queryable because acceptance re-derives on demand. */
[[nodiscard]] auto build_automaton(const Regexp& e, const IndependenceAlphabet& sigma,
                                   AutomatonKind kind, std::optional<std::size_t> bound = {},
                                   std::optional<TheoryTier> tier = {},
                                   const ExplorationBudget& budget = {}) -> Automaton;

/* Acceptance by re-derivation from the initial key (valid for partial
   graphs; the stored graph is not consulted). */
[[nodiscard]] auto accepts(const Automaton& m, const Word& w) -> bool;

/* All accepted words of length <= max_len, shortlex, by on-demand
   derivation with pruning of empty frontiers. */
[[nodiscard]] auto bounded_language(const Automaton& m, std::size_t max_len, std::size_t cap = 12)
    -> std::vector<Word>;

[[nodiscard]] auto export_dot(const Automaton& m) -> std::string;
[[nodiscard]] auto export_json(const Automaton& m) -> std::string;

}  // namespace retrace
