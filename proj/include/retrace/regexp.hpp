#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "retrace/alphabet.hpp"

namespace retrace {

enum class ReKind : std::uint8_t { Zero, One, Letter, Sum, Cat, Star };

/* Immutable regular expression with shared subterms.  Equality and hashing
   are structural; letters compare by symbol. */
class Regexp {
 public:
  Regexp() : Regexp(zero()) {}

  static auto zero() -> Regexp;
  static auto one() -> Regexp;
  static auto letter(Letter l) -> Regexp;
  static auto sum(Regexp l, Regexp r) -> Regexp;
  static auto cat(Regexp l, Regexp r) -> Regexp;
  static auto star(Regexp body) -> Regexp;

  [[nodiscard]] auto kind() const -> ReKind;
  [[nodiscard]] auto left() const -> const Regexp&;   // Sum, Cat
  [[nodiscard]] auto right() const -> const Regexp&;  // Sum, Cat
  [[nodiscard]] auto body() const -> const Regexp&;   // Star
  [[nodiscard]] auto letter_value() const -> const Letter&;

  [[nodiscard]] auto hash() const -> std::size_t;
  [[nodiscard]] auto node_count() const -> std::size_t;

  /* Address of the shared node, stable for the value's lifetime.  Usable as
     a memoization key: equal identities imply structural equality. */
  [[nodiscard]] auto identity() const -> const void*;

  friend auto operator==(const Regexp& a, const Regexp& b) -> bool;
  friend auto operator!=(const Regexp& a, const Regexp& b) -> bool { return !(a == b); }
  friend auto nullable(const Regexp& e) -> bool;

 private:
  struct Node;
  explicit Regexp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/* Total order used wherever regexps are sorted for deterministic output:
   Cat < Star < Letter < One < Zero < Sum, recursing lexicographically.
   The ranking is chosen so normalized sums render in the familiar way
   (products first, then letters, then 1). */
[[nodiscard]] auto compare(const Regexp& a, const Regexp& b) -> int;

struct RegexpLess {
  auto operator()(const Regexp& a, const Regexp& b) const -> bool { return compare(a, b) < 0; }
};

struct RegexpHash {
  auto operator()(const Regexp& e) const -> std::size_t { return e.hash(); }
};

/* Grammar: E ::= E '+' E | E E | E '*' | '(' E ')' | '0' | '1' | letter.
   '+' and juxtaposition associate to the left; '*' binds tightest.  Letters
   must be declared in sigma; multi-character letters are quoted ('tok'). */
[[nodiscard]] auto parse_regexp(std::string_view text, const IndependenceAlphabet& sigma) -> Regexp;

/* Inverse of parse_regexp up to structural identity: parentheses are emitted
   only where the default precedence or association would differ. */
[[nodiscard]] auto render_regexp(const Regexp& e) -> std::string;

[[nodiscard]] auto nullable(const Regexp& e) -> bool;

struct SizeMetrics {
  std::size_t nodes = 0;
  std::size_t alphabetic_width = 0;
  std::size_t star_height = 0;
};

[[nodiscard]] auto size_metrics(const Regexp& e) -> SizeMetrics;

}  // namespace retrace
