#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "retrace/alphabet.hpp"
#include "retrace/regexp.hpp"

namespace retrace {

/* Whether every word of the language induces a connected dependence graph
   (letters occurring in the word as vertices, dependence as edges).
   Decided exactly on the product of the classical partial-derivative
   automaton with the set of letters consumed so far. */
[[nodiscard]] auto language_connected(const Regexp& e, const IndependenceAlphabet& sigma) -> bool;

/* Star-connectedness: every starred subterm's body must denote a connected
   language (and the property is closed under +, ., *). */
[[nodiscard]] auto star_connected(const Regexp& e, const IndependenceAlphabet& sigma) -> bool;

enum class RankClaim { Rank, UniformRank };

struct RankVerdict {
  RankClaim claim = RankClaim::Rank;
  std::size_t bound = 0;
  std::size_t max_len = 0;
  bool holds = true;
  std::size_t words_checked = 0;
  /* On refutation: the trace-closure word w, and for plain rank the split
     u.v of w that no language word covers within the bound. */
  std::optional<Word> witness_word;
  std::optional<std::pair<Word, Word>> witness_split;
};

/* Checks, over every word w of length <= max_len in the trace closure of
   the language, that each split w = u.v admits some language word z with
   z ~ w and u scattered in z with at most `bound` blocks. */
[[nodiscard]] auto check_rank(const Regexp& e, const IndependenceAlphabet& sigma, std::size_t bound,
                              std::size_t max_len) -> RankVerdict;

/* Stronger, per-word form: one z must serve every split of w.  When `words`
   is given only those closure words are examined (they are checked for
   closure membership first); otherwise all closure words up to max_len. */
[[nodiscard]] auto check_uniform_rank(const Regexp& e, const IndependenceAlphabet& sigma,
                                      std::size_t bound, std::size_t max_len,
                                      const std::vector<Word>& words = {}) -> RankVerdict;

}  // namespace retrace
