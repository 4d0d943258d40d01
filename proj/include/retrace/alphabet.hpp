#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace retrace {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using LetterId = std::uint32_t;

/* A letter is identified by its symbol; the id is the position in the
   declaring alphabet and exists so independence tests are bitmask lookups. */
struct Letter {
  std::string symbol;
  LetterId id = 0;
};

[[nodiscard]] auto operator==(const Letter& a, const Letter& b) -> bool;
[[nodiscard]] auto operator<(const Letter& a, const Letter& b) -> bool;

/* A word over the alphabet, as letter ids. */
using Word = std::vector<LetterId>;

/* Alphabet with an irreflexive symmetric independence relation.
   Capped at 64 letters so each letter's independence set is one word. */
class IndependenceAlphabet {
 public:
  auto add_letter(std::string symbol) -> LetterId;
  void set_independent(LetterId a, LetterId b);
  void set_independent(std::string_view a, std::string_view b);

  [[nodiscard]] auto size() const -> std::size_t { return symbols_.size(); }
  [[nodiscard]] auto symbols() const -> const std::vector<std::string>& { return symbols_; }
  [[nodiscard]] auto symbol(LetterId id) const -> const std::string& { return symbols_.at(id); }
  [[nodiscard]] auto find(std::string_view symbol) const -> std::optional<LetterId>;
  [[nodiscard]] auto id(std::string_view symbol) const -> LetterId;
  [[nodiscard]] auto letter(std::string_view symbol) const -> Letter;
  [[nodiscard]] auto letter(LetterId id) const -> Letter { return {symbol(id), id}; }

  [[nodiscard]] auto independent(LetterId a, LetterId b) const -> bool;
  /* Bit j is set iff letter j is independent of a. */
  [[nodiscard]] auto indep_mask(LetterId a) const -> std::uint64_t { return indep_.at(a); }
  /* Unordered dependent pairs {a,b} with a < b (the diagonal is excluded). */
  [[nodiscard]] auto dependent_pairs() const -> std::vector<std::pair<LetterId, LetterId>>;

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, LetterId> index_;
  std::vector<std::uint64_t> indep_;
};

/* Declaration format, '#' starts a comment, ';' may replace line breaks:

     letters: a b c
     indep: a b, a c
*/
[[nodiscard]] auto parse_alphabet(std::string_view text) -> IndependenceAlphabet;

/* Words are written by juxtaposition: "abc". Multi-character letters are
   quoted: "'in''out'". The empty string is the empty word. */
[[nodiscard]] auto parse_word(std::string_view text, const IndependenceAlphabet& sigma) -> Word;
[[nodiscard]] auto format_word(const Word& w, const IndependenceAlphabet& sigma) -> std::string;

/* True when the symbol can be written without quotes. */
[[nodiscard]] auto plain_symbol(std::string_view symbol) -> bool;

/* Set of letters occurring in w, as a bitmask over ids. */
[[nodiscard]] auto letter_mask(const Word& w) -> std::uint64_t;

}  // namespace retrace
