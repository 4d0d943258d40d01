#pragma once

#include <vector>

#include "retrace/alphabet.hpp"
#include "retrace/regexp.hpp"

namespace retrace {

/* Syntactic reorderable part R^I: every occurrence of a letter dependent on
   some member of the set is replaced by 0.  The set is given as a bitmask
   over letter ids; the word form uses the word's letter set. */
[[nodiscard]] auto reorderable_part_masked(const Regexp& e, std::uint64_t letters,
                                           const IndependenceAlphabet& sigma) -> Regexp;
[[nodiscard]] auto reorderable_part(const Regexp& e, LetterId a, const IndependenceAlphabet& sigma)
    -> Regexp;
[[nodiscard]] auto reorderable_part(const Regexp& e, const Word& u,
                                    const IndependenceAlphabet& sigma) -> Regexp;

/* Brzozowski reordering derivative.  Letter clauses:
     D(E+F) = D(E)+D(F);  D(EF) = D(E)F + R(E)D(F);  D(E*) = R(E)* D(E) E*,
   the star clause grouped Cat(Cat(Star(R(E)), D(E)), Star(E)). */
[[nodiscard]] auto brz_reorder_derive(const Regexp& e, LetterId a,
                                      const IndependenceAlphabet& sigma) -> Regexp;
[[nodiscard]] auto brz_reorder_derive(const Regexp& e, const Word& u,
                                      const IndependenceAlphabet& sigma) -> Regexp;

/* Antimirov reordering parts-of-derivatives; canonically sorted, no
   duplicates.  The star rule builds Cat(Cat(Star(R(E)), E'), Star(E)). */
[[nodiscard]] auto antimirov_reorder_step(const Regexp& e, LetterId a,
                                          const IndependenceAlphabet& sigma) -> std::vector<Regexp>;
[[nodiscard]] auto antimirov_reorder_parts(const Regexp& e, const Word& u,
                                           const IndependenceAlphabet& sigma)
    -> std::vector<Regexp>;

}  // namespace retrace
