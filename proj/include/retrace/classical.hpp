#pragma once

#include <vector>

#include "retrace/regexp.hpp"

namespace retrace {

/* Word derivatives of the plain (interleaving-free) language semantics.
   Everything is raw syntax: no simplification beyond the rules themselves. */

[[nodiscard]] auto brzozowski_derive(const Regexp& e, LetterId a) -> Regexp;
[[nodiscard]] auto brzozowski_derive(const Regexp& e, const Word& u) -> Regexp;

/* Partial derivatives; results are duplicate-free and canonically sorted. */
[[nodiscard]] auto antimirov_step(const Regexp& e, LetterId a) -> std::vector<Regexp>;
[[nodiscard]] auto antimirov_parts(const Regexp& e, const Word& u) -> std::vector<Regexp>;

/* Syntactic closure of e under partial derivative steps: contains e itself
   and every expression reachable by one or more steps, for any letter.
   Its size is bounded by alphabetic width + 1. */
[[nodiscard]] auto classical_closure_set(const Regexp& e) -> std::vector<Regexp>;

}  // namespace retrace
