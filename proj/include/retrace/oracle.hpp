#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "retrace/alphabet.hpp"
#include "retrace/regexp.hpp"

namespace retrace {

/* Ground-truth semantics at bounded size.  The syntactic engines are all
   validated against the operations in this header. */

/* Canonical key of the trace equivalence class of a word: letter counts plus
   the projections onto every dependent pair of distinct letters. */
struct TraceKey {
  std::vector<std::uint32_t> counts;
  std::vector<Word> projections;  // indexed like IndependenceAlphabet::dependent_pairs()

  friend auto operator==(const TraceKey& a, const TraceKey& b) -> bool = default;
};

struct TraceKeyHash {
  auto operator()(const TraceKey& k) const -> std::size_t;
};

[[nodiscard]] auto trace_key(const Word& w, const IndependenceAlphabet& sigma) -> TraceKey;
[[nodiscard]] auto trace_equiv(const Word& u, const Word& v, const IndependenceAlphabet& sigma)
    -> bool;

/* All words of the plain language of e up to max_len, in shortlex order.
   The cap guards against runaway enumerations; raise it deliberately. */
[[nodiscard]] auto enumerate_language(const Regexp& e, std::size_t max_len, std::size_t cap = 12)
    -> std::vector<Word>;

/* Membership of w in the trace closure of the language of e: some word of
   the language of the same length is trace-equivalent to w. */
[[nodiscard]] auto closure_member_oracle(const Regexp& e, const Word& w,
                                         const IndependenceAlphabet& sigma) -> bool;

/* Reordering concatenation of words:
   eps . v = {v};  u . eps = {u};
   au . bv = {a}(u . bv)  u  {b | au independent of b}(au . v). */
[[nodiscard]] auto reorder_concat(const Word& u, const Word& v, const IndependenceAlphabet& sigma)
    -> std::vector<Word>;

/* Scattering z = v0 u1 v1 ... un vn where the ui are nonempty, the interior
   vi are nonempty, and each vj with j < i is independent of ui.  Strict mode
   scatters u itself; the equivalence modes scatter some u' ~ u (the suffix
   side needs no input word: given u and z its class is determined). */
enum class ScatterMode { Strict, PrefixEquiv, BothEquiv };

struct ScatterWitness {
  std::vector<Word> u_blocks;  // u1..un, nonempty each
  std::vector<Word> v_blocks;  // v0..vn, interior blocks nonempty
  [[nodiscard]] auto degree() const -> std::size_t { return u_blocks.size(); }
  [[nodiscard]] auto scattered() const -> Word;  // concatenation of the u-blocks
  [[nodiscard]] auto remainder() const -> Word;  // concatenation of the v-blocks
};

/* A witness of minimal degree, or nothing if u cannot be scattered into z
   (within max_degree when given). */
[[nodiscard]] auto scatter_check(const Word& u, const Word& z, const IndependenceAlphabet& sigma,
                                 ScatterMode mode, std::optional<std::size_t> max_degree = {})
    -> std::optional<ScatterWitness>;

/* Connectivity of the dependence graph restricted to the letters of w. */
[[nodiscard]] auto word_connected(const Word& w, const IndependenceAlphabet& sigma) -> bool;

/* Semantic reordering derivative of a finite language: all exact remainders
   v such that u' scatters into some z in L for some u' ~ u. */
[[nodiscard]] auto semantic_reorder_derivative(const std::vector<Word>& language, const Word& u,
                                               const IndependenceAlphabet& sigma)
    -> std::vector<Word>;

/* Members of the language independent of every letter of u. */
[[nodiscard]] auto semantic_reorderable_part(const std::vector<Word>& language, const Word& u,
                                             const IndependenceAlphabet& sigma)
    -> std::vector<Word>;

/* Shortlex comparison used for all word-set outputs. */
[[nodiscard]] auto shortlex_less(const Word& a, const Word& b) -> bool;

}  // namespace retrace
