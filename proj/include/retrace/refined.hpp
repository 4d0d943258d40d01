#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "retrace/alphabet.hpp"
#include "retrace/regexp.hpp"

namespace retrace {

/* Refined Antimirov reordering derivative: a consumed prefix leaves a list
   of regexps describing the gaps around its scattered blocks. */

struct SplitPair {
  Regexp left;   // matches the gap before the consumed letter, independent of it
  Regexp right;  // matches the rest
  friend auto operator==(const SplitPair& a, const SplitPair& b) -> bool {
    return a.left == b.left && a.right == b.right;
  }
};

/* Nonempty in every reachable configuration; bounded mode keeps length <= N+1. */
using StateList = std::vector<Regexp>;

struct StateListHash {
  auto operator()(const StateList& g) const -> std::size_t;
};

struct StateListLess {
  auto operator()(const StateList& a, const StateList& b) const -> bool;
};

/* All pairs with e ->(a; E_l, E_r).  Rules:
     a -> (a; 1, 1)
     EF left:   (E_l, Cat(E_r, F))
     EF right:  (Cat(R(E), F_l), F_r)
     E* :       (Cat(Star(R(E)), E_l), Cat(E_r, Star(E)))
   The Cat groupings are exactly the ones the closure-set constructors use. */
[[nodiscard]] auto refined_split_step(const Regexp& e, LetterId a,
                                      const IndependenceAlphabet& sigma) -> std::vector<SplitPair>;

/* One letter of list rewriting.  Some element E of g splits as (E_l, E_r);
   the prefix G before E becomes R_a(G) and E is replaced by
     E_l, E_r          (needs |g|-1 < N in bounded mode)
     E_r               (E_l nullable, nonempty prefix)
     E_l               (E_r nullable, nonempty suffix)
     nothing           (both nullable, nonempty prefix and suffix). */
[[nodiscard]] auto list_step(const StateList& g, LetterId a, const IndependenceAlphabet& sigma,
                             std::optional<std::size_t> bound) -> std::vector<StateList>;

/* Lists reachable from [e] along u, breadth-first with structural dedup. */
[[nodiscard]] auto refined_derive(const Regexp& e, const Word& u,
                                  const IndependenceAlphabet& sigma,
                                  std::optional<std::size_t> bound) -> std::vector<StateList>;

/* u is in the trace closure of the language of e (under-approximated when a
   bound is given): u = eps and e nullable, or some reachable two-element
   list has both components nullable. */
[[nodiscard]] auto refined_membership(const Regexp& e, const Word& u,
                                      const IndependenceAlphabet& sigma,
                                      std::optional<std::size_t> bound) -> bool;

/* Finiteness sets: squiggle_plus is the closure of e under split components;
   to_star adds e itself and closes under reorderable parts over all letter
   subsets.  Every component of every reachable list lands in to_star
   structurally. */
struct ClosureSets {
  std::vector<Regexp> squiggle_plus;
  std::vector<Regexp> to_star;
};

[[nodiscard]] auto refined_closure_sets(const Regexp& e, const IndependenceAlphabet& sigma)
    -> ClosureSets;

}  // namespace retrace
