#include "retrace/alphabet.hpp"

#include <cctype>
#include <sstream>

namespace retrace {

auto operator==(const Letter& a, const Letter& b) -> bool { return a.symbol == b.symbol; }
auto operator<(const Letter& a, const Letter& b) -> bool { return a.symbol < b.symbol; }

namespace {

auto is_space(char c) -> bool { return std::isspace(static_cast<unsigned char>(c)) != 0; }

auto trim(std::string_view s) -> std::string_view {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

void validate_symbol(std::string_view symbol) {
  if (symbol.empty()) throw ParseError("letter symbol must be nonempty");
  if (symbol == "0" || symbol == "1")
    throw ParseError("'0' and '1' are reserved and cannot be letters");
  for (char c : symbol) {
    if (c == '\'' || is_space(c))
      throw ParseError("letter symbol '" + std::string(symbol) +
                       "' may not contain quotes or whitespace");
  }
}

auto strip_quotes(std::string_view token) -> std::string_view {
  if (token.size() >= 2 && token.front() == '\'' && token.back() == '\'')
    return token.substr(1, token.size() - 2);
  return token;
}

}  // namespace

auto IndependenceAlphabet::add_letter(std::string symbol) -> LetterId {
  validate_symbol(symbol);
  if (index_.count(symbol) != 0) throw ParseError("duplicate letter '" + symbol + "'");
  if (symbols_.size() >= 64) throw ParseError("alphabet is limited to 64 letters");
  auto id = static_cast<LetterId>(symbols_.size());
  index_.emplace(symbol, id);
  symbols_.push_back(std::move(symbol));
  indep_.push_back(0);
  return id;
}

void IndependenceAlphabet::set_independent(LetterId a, LetterId b) {
  if (a >= size() || b >= size()) throw ParseError("independence pair uses an undeclared letter");
  if (a == b)
    throw ParseError("independence must be irreflexive: '" + symbols_[a] + "' paired with itself");
  indep_[a] |= std::uint64_t{1} << b;
  indep_[b] |= std::uint64_t{1} << a;
}

void IndependenceAlphabet::set_independent(std::string_view a, std::string_view b) {
  set_independent(id(a), id(b));
}

auto IndependenceAlphabet::find(std::string_view symbol) const -> std::optional<LetterId> {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

auto IndependenceAlphabet::id(std::string_view symbol) const -> LetterId {
  auto found = find(symbol);
  if (!found) throw ParseError("letter '" + std::string(symbol) + "' is not declared");
  return *found;
}

auto IndependenceAlphabet::letter(std::string_view symbol) const -> Letter {
  auto i = id(symbol);
  return {symbols_[i], i};
}

auto IndependenceAlphabet::independent(LetterId a, LetterId b) const -> bool {
  return (indep_.at(a) >> b & 1) != 0;
}

auto IndependenceAlphabet::dependent_pairs() const -> std::vector<std::pair<LetterId, LetterId>> {
  std::vector<std::pair<LetterId, LetterId>> pairs;
  for (LetterId a = 0; a < size(); ++a)
    for (LetterId b = a + 1; b < size(); ++b)
      if (!independent(a, b)) pairs.emplace_back(a, b);
  return pairs;
}

auto parse_alphabet(std::string_view text) -> IndependenceAlphabet {
  IndependenceAlphabet sigma;
  bool saw_letters = false;
  std::vector<std::pair<std::string, std::string>> pending;

  std::string line;
  std::string flat(text);
  for (char& c : flat)
    if (c == ';') c = '\n';
  std::istringstream lines(flat);
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto body = trim(line);
    if (body.empty()) continue;

    if (body.rfind("letters:", 0) == 0) {
      if (saw_letters) throw ParseError("duplicate 'letters:' declaration");
      saw_letters = true;
      std::istringstream toks{std::string(body.substr(8))};
      std::string tok;
      while (toks >> tok) sigma.add_letter(std::string(strip_quotes(tok)));
    } else if (body.rfind("indep:", 0) == 0) {
      std::string rest(body.substr(6));
      std::istringstream groups(rest);
      std::string group;
      while (std::getline(groups, group, ',')) {
        if (trim(group).empty()) continue;
        std::istringstream toks{group};
        std::string a, b, extra;
        if (!(toks >> a >> b) || (toks >> extra))
          throw ParseError("independence pair must name exactly two letters: '" + group + "'");
        pending.emplace_back(std::string(strip_quotes(a)), std::string(strip_quotes(b)));
      }
    } else {
      throw ParseError("unrecognized alphabet line: '" + std::string(body) + "'");
    }
  }

  if (!saw_letters) throw ParseError("alphabet needs a 'letters:' declaration");
  for (const auto& [a, b] : pending) sigma.set_independent(a, b);
  return sigma;
}

auto plain_symbol(std::string_view symbol) -> bool {
  if (symbol.size() != 1) return false;
  char c = symbol.front();
  if (c == '+' || c == '*' || c == '(' || c == ')' || c == '0' || c == '1' || c == '\'')
    return false;
  return !is_space(c);
}

auto parse_word(std::string_view text, const IndependenceAlphabet& sigma) -> Word {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] == '\'') {
      auto close = text.find('\'', i + 1);
      if (close == std::string_view::npos) throw ParseError("unterminated quoted letter in word");
      w.push_back(sigma.id(text.substr(i + 1, close - i - 1)));
      i = close + 1;
    } else {
      w.push_back(sigma.id(text.substr(i, 1)));
      ++i;
    }
  }
  return w;
}

auto format_word(const Word& w, const IndependenceAlphabet& sigma) -> std::string {
  std::string out;
  for (auto id : w) {
    const auto& s = sigma.symbol(id);
    if (plain_symbol(s)) {
      out += s;
    } else {
      out += '\'';
      out += s;
      out += '\'';
    }
  }
  return out;
}

auto letter_mask(const Word& w) -> std::uint64_t {
  std::uint64_t m = 0;
  for (auto id : w) m |= std::uint64_t{1} << id;
  return m;
}

}  // namespace retrace
