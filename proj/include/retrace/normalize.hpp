#pragma once

#include "retrace/regexp.hpp"

namespace retrace {

/* T0: '+' is associative, commutative, idempotent with unit 0; 0 annihilates
   and 1 is the unit of concatenation; concatenation is associative.
   T1 additionally merges adjacent equal starred factors (F*F* -> F*) and
   collapses 0* and 1* to 1.  Neither tier distributes. */
enum class TheoryTier { T0, T1 };

/* Single bottom-up pass to a canonical form: sums are flattened, 0-free,
   duplicate-free and sorted; products are flattened, 1-free and collapse to 0
   around a 0 factor.  Flattened operators rebuild left-associated, matching
   the parser, so rendering a normal form never needs association parentheses.
   Idempotent; never distributes. */
[[nodiscard]] auto normalize(const Regexp& e, TheoryTier tier) -> Regexp;

[[nodiscard]] auto equal_mod(const Regexp& a, const Regexp& b, TheoryTier tier) -> bool;

}  // namespace retrace
