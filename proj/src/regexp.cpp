#include "retrace/regexp.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <utility>

namespace retrace {

struct Regexp::Node {
  ReKind kind;
  Letter letter;       // Letter only
  Regexp left, right;  // Sum/Cat children; Star keeps its body in left
  std::size_t hash = 0;
  std::size_t nodes = 1;
  bool null = false;  // cached nullability, synthesized bottom-up
};

namespace {

auto hash_mix(std::size_t seed, std::size_t v) -> std::size_t {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

auto Regexp::zero() -> Regexp {
  // Null children break the cycle with the default constructor.
  static const auto node = std::make_shared<const Node>(
      Node{ReKind::Zero, {}, Regexp(nullptr), Regexp(nullptr), 0x5a0, 1, false});
  return Regexp(node);
}

auto Regexp::one() -> Regexp {
  static const auto node = std::make_shared<const Node>(
      Node{ReKind::One, {}, Regexp(nullptr), Regexp(nullptr), 0x5a1, 1, true});
  return Regexp(node);
}

auto Regexp::letter(Letter l) -> Regexp {
  auto h = hash_mix(0x11, std::hash<std::string>{}(l.symbol));
  return Regexp(
      std::make_shared<const Node>(Node{ReKind::Letter, std::move(l), {}, {}, h, 1, false}));
}

auto Regexp::sum(Regexp l, Regexp r) -> Regexp {
  auto h = hash_mix(hash_mix(0x22, l.hash()), r.hash());
  auto n = l.node_count() + r.node_count() + 1;
  bool null = l.node_->null || r.node_->null;
  return Regexp(
      std::make_shared<const Node>(Node{ReKind::Sum, {}, std::move(l), std::move(r), h, n, null}));
}

auto Regexp::cat(Regexp l, Regexp r) -> Regexp {
  auto h = hash_mix(hash_mix(0x33, l.hash()), r.hash());
  auto n = l.node_count() + r.node_count() + 1;
  bool null = l.node_->null && r.node_->null;
  return Regexp(
      std::make_shared<const Node>(Node{ReKind::Cat, {}, std::move(l), std::move(r), h, n, null}));
}

auto Regexp::star(Regexp body) -> Regexp {
  auto h = hash_mix(0x44, body.hash());
  auto n = body.node_count() + 1;
  return Regexp(
      std::make_shared<const Node>(Node{ReKind::Star, {}, std::move(body), {}, h, n, true}));
}

auto Regexp::kind() const -> ReKind { return node_->kind; }
auto Regexp::left() const -> const Regexp& { return node_->left; }
auto Regexp::right() const -> const Regexp& { return node_->right; }
auto Regexp::body() const -> const Regexp& { return node_->left; }
auto Regexp::letter_value() const -> const Letter& { return node_->letter; }
auto Regexp::hash() const -> std::size_t { return node_->hash; }
auto Regexp::node_count() const -> std::size_t { return node_->nodes; }
auto Regexp::identity() const -> const void* { return node_.get(); }

auto operator==(const Regexp& a, const Regexp& b) -> bool {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      return true;
    case ReKind::Letter:
      return a.letter_value() == b.letter_value();
    case ReKind::Star:
      return a.body() == b.body();
    case ReKind::Sum:
    case ReKind::Cat:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

auto rank(ReKind k) -> int {
  switch (k) {
    case ReKind::Cat: return 0;
    case ReKind::Star: return 1;
    case ReKind::Letter: return 2;
    case ReKind::One: return 3;
    case ReKind::Zero: return 4;
    case ReKind::Sum: return 5;
  }
  return 6;
}

}  // namespace

auto compare(const Regexp& a, const Regexp& b) -> int {
  if (a == b) return 0;
  if (int d = rank(a.kind()) - rank(b.kind()); d != 0) return d < 0 ? -1 : 1;
  switch (a.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      return 0;
    case ReKind::Letter:
      return a.letter_value().symbol.compare(b.letter_value().symbol) < 0 ? -1 : 1;
    case ReKind::Star:
      return compare(a.body(), b.body());
    case ReKind::Sum:
    case ReKind::Cat: {
      if (int d = compare(a.left(), b.left()); d != 0) return d;
      return compare(a.right(), b.right());
    }
  }
  return 0;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const IndependenceAlphabet& sigma) : text_(text), sigma_(sigma) {}

  auto run() -> Regexp {
    auto e = parse_sum();
    skip_space();
    if (pos_ < text_.size())
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "' at position " +
                       std::to_string(pos_));
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0)
      ++pos_;
  }

  auto peek() -> int {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : -1;
  }

  auto starts_factor(int c) -> bool {
    if (c < 0 || c == '+' || c == '*' || c == ')') return false;
    return true;  // '(', '0', '1', quote, or a letter character
  }

  auto parse_sum() -> Regexp {
    auto e = parse_cat();
    while (peek() == '+') {
      ++pos_;
      e = Regexp::sum(std::move(e), parse_cat());
    }
    return e;
  }

  auto parse_cat() -> Regexp {
    auto e = parse_starred();
    while (starts_factor(peek())) e = Regexp::cat(std::move(e), parse_starred());
    return e;
  }

  auto parse_starred() -> Regexp {
    auto e = parse_atom();
    while (peek() == '*') {
      ++pos_;
      e = Regexp::star(std::move(e));
    }
    return e;
  }

  auto parse_atom() -> Regexp {
    int c = peek();
    if (c < 0) throw ParseError("unexpected end of expression");
    if (c == '(') {
      ++pos_;
      auto e = parse_sum();
      if (peek() != ')') throw ParseError("missing ')'");
      ++pos_;
      return e;
    }
    if (c == '0') {
      ++pos_;
      return Regexp::zero();
    }
    if (c == '1') {
      ++pos_;
      return Regexp::one();
    }
    if (c == '\'') {
      auto close = text_.find('\'', pos_ + 1);
      if (close == std::string_view::npos) throw ParseError("unterminated quoted letter");
      auto sym = text_.substr(pos_ + 1, close - pos_ - 1);
      pos_ = close + 1;
      return Regexp::letter(sigma_.letter(sym));
    }
    auto sym = text_.substr(pos_, 1);
    ++pos_;
    return Regexp::letter(sigma_.letter(sym));
  }

  std::string_view text_;
  const IndependenceAlphabet& sigma_;
  std::size_t pos_ = 0;
};

/* Minimal parenthesization: `need` is the lowest precedence the context
   accepts without parentheses (0 sum, 1 cat, 2 star operand). */
void render(const Regexp& e, int need, std::string& out) {
  switch (e.kind()) {
    case ReKind::Zero:
      out += '0';
      return;
    case ReKind::One:
      out += '1';
      return;
    case ReKind::Letter: {
      const auto& s = e.letter_value().symbol;
      if (plain_symbol(s)) {
        out += s;
      } else {
        out += '\'';
        out += s;
        out += '\'';
      }
      return;
    }
    case ReKind::Sum: {
      bool parens = need > 0;
      if (parens) out += '(';
      render(e.left(), 0, out);
      out += '+';
      render(e.right(), 1, out);  // right-nested sums keep their parentheses
      if (parens) out += ')';
      return;
    }
    case ReKind::Cat: {
      bool parens = need > 1;
      if (parens) out += '(';
      render(e.left(), 1, out);
      render(e.right(), 2, out);  // likewise for right-nested products
      if (parens) out += ')';
      return;
    }
    case ReKind::Star: {
      render(e.body(), 2, out);
      out += '*';
      return;
    }
  }
}

}  // namespace

auto parse_regexp(std::string_view text, const IndependenceAlphabet& sigma) -> Regexp {
  return Parser(text, sigma).run();
}

auto render_regexp(const Regexp& e) -> std::string {
  std::string out;
  render(e, 0, out);
  return out;
}

auto nullable(const Regexp& e) -> bool { return e.node_->null; }

namespace {

void metrics(const Regexp& e, SizeMetrics& m, std::size_t depth) {
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      break;
    case ReKind::Letter:
      ++m.alphabetic_width;
      break;
    case ReKind::Star:
      m.star_height = std::max(m.star_height, depth + 1);
      metrics(e.body(), m, depth + 1);
      break;
    case ReKind::Sum:
    case ReKind::Cat:
      metrics(e.left(), m, depth);
      metrics(e.right(), m, depth);
      break;
  }
}

}  // namespace

auto size_metrics(const Regexp& e) -> SizeMetrics {
  SizeMetrics m;
  m.nodes = e.node_count();
  metrics(e, m, 0);
  return m;
}

}  // namespace retrace
