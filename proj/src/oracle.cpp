#include "retrace/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "retrace/classical.hpp"

namespace retrace {

namespace {

constexpr int kInf = 1 << 29;

auto hash_mix(std::size_t seed, std::size_t v) -> std::size_t {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

auto TraceKeyHash::operator()(const TraceKey& k) const -> std::size_t {
  std::size_t h = 0x7ace;
  for (auto c : k.counts) h = hash_mix(h, c);
  for (const auto& p : k.projections) {
    h = hash_mix(h, 0xbeef);
    for (auto a : p) h = hash_mix(h, a);
  }
  return h;
}

auto trace_key(const Word& w, const IndependenceAlphabet& sigma) -> TraceKey {
  TraceKey key;
  key.counts.assign(sigma.size(), 0);
  for (auto a : w) ++key.counts.at(a);
  auto pairs = sigma.dependent_pairs();
  key.projections.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (auto a : w)
      if (a == pairs[i].first || a == pairs[i].second) key.projections[i].push_back(a);
  }
  return key;
}

auto trace_equiv(const Word& u, const Word& v, const IndependenceAlphabet& sigma) -> bool {
  if (u.size() != v.size()) return false;
  return trace_key(u, sigma) == trace_key(v, sigma);
}

auto shortlex_less(const Word& a, const Word& b) -> bool {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

auto enumerate_language(const Regexp& e, std::size_t max_len, std::size_t cap)
    -> std::vector<Word> {
  if (max_len > cap)
    throw std::invalid_argument("enumerate_language: max_len " + std::to_string(max_len) +
                                " exceeds cap " + std::to_string(cap));

  std::vector<LetterId> letters;
  {
    std::vector<Regexp> stack{e};
    std::set<LetterId> seen;
    while (!stack.empty()) {
      Regexp cur = stack.back();
      stack.pop_back();
      switch (cur.kind()) {
        case ReKind::Letter:
          seen.insert(cur.letter_value().id);
          break;
        case ReKind::Sum:
        case ReKind::Cat:
          stack.push_back(cur.left());
          stack.push_back(cur.right());
          break;
        case ReKind::Star:
          stack.push_back(cur.body());
          break;
        default:
          break;
      }
    }
    letters.assign(seen.begin(), seen.end());
  }

  std::unordered_map<Regexp, std::unordered_map<LetterId, std::vector<Regexp>>, RegexpHash> steps;
  auto step = [&](const Regexp& part, LetterId a) -> const std::vector<Regexp>& {
    auto& per = steps[part];
    auto it = per.find(a);
    if (it == per.end()) it = per.emplace(a, antimirov_step(part, a)).first;
    return it->second;
  };

  std::vector<Word> out;
  Word word;
  auto walk = [&](auto&& self, const std::vector<Regexp>& parts) -> void {
    for (const auto& p : parts)
      if (nullable(p)) {
        out.push_back(word);
        break;
      }
    if (word.size() == max_len) return;
    for (auto a : letters) {
      std::vector<Regexp> next;
      for (const auto& p : parts) {
        const auto& s = step(p, a);
        next.insert(next.end(), s.begin(), s.end());
      }
      std::sort(next.begin(), next.end(), RegexpLess{});
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (next.empty()) continue;
      word.push_back(a);
      self(self, next);
      word.pop_back();
    }
  };
  walk(walk, {e});

  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

auto closure_member_oracle(const Regexp& e, const Word& w, const IndependenceAlphabet& sigma)
    -> bool {
  auto lang = enumerate_language(e, w.size(), std::max<std::size_t>(12, w.size()));
  auto key = trace_key(w, sigma);
  for (const auto& z : lang)
    if (z.size() == w.size() && trace_key(z, sigma) == key) return true;
  return false;
}

auto reorder_concat(const Word& u, const Word& v, const IndependenceAlphabet& sigma)
    -> std::vector<Word> {
  std::map<std::pair<Word, Word>, std::vector<Word>> memo;
  auto rec = [&](auto&& self, const Word& x, const Word& y) -> const std::vector<Word>& {
    auto found = memo.find({x, y});
    if (found != memo.end()) return found->second;
    std::set<Word> acc;
    if (x.empty()) {
      acc.insert(y);
    } else if (y.empty()) {
      acc.insert(x);
    } else {
      Word xtail(x.begin() + 1, x.end());
      for (const auto& w : self(self, xtail, y)) {
        Word z{x.front()};
        z.insert(z.end(), w.begin(), w.end());
        acc.insert(std::move(z));
      }
      auto b = y.front();
      if ((sigma.indep_mask(b) & letter_mask(x)) == letter_mask(x)) {
        Word ytail(y.begin() + 1, y.end());
        for (const auto& w : self(self, x, ytail)) {
          Word z{b};
          z.insert(z.end(), w.begin(), w.end());
          acc.insert(std::move(z));
        }
      }
    }
    return memo.emplace(std::make_pair(x, y), std::vector<Word>(acc.begin(), acc.end()))
        .first->second;
  };
  auto result = rec(rec, u, v);
  std::sort(result.begin(), result.end(), shortlex_less);
  return result;
}

namespace {

/* Residual of u under trace equivalence: what remains to be consumed, as
   per-letter counts plus a cursor into each dependent-pair projection.  A
   letter is consumable iff it is minimal in the residual trace, i.e. heads
   every dependent-pair projection it belongs to. */
class Residue {
 public:
  Residue(const Word& u, const IndependenceAlphabet& sigma, bool strict)
      : sigma_(&sigma), strict_(strict), u_(u) {
    if (!strict_) {
      pairs_ = sigma.dependent_pairs();
      for (const auto& [a, b] : pairs_) {
        Word proj;
        for (auto c : u)
          if (c == a || c == b) proj.push_back(c);
        projections_.push_back(std::move(proj));
      }
      counts_.assign(sigma.size(), 0);
      for (auto c : u) ++counts_[c];
      fronts_.assign(pairs_.size(), 0);
    }
  }

  [[nodiscard]] auto done() const -> bool { return consumed_ == u_.size(); }
  [[nodiscard]] auto remaining() const -> std::size_t { return u_.size() - consumed_; }

  [[nodiscard]] auto can_consume(LetterId c) const -> bool {
    if (strict_) return consumed_ < u_.size() && u_[consumed_] == c;
    if (c >= counts_.size() || counts_[c] == 0) return false;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (pairs_[i].first != c && pairs_[i].second != c) continue;
      if (fronts_[i] >= projections_[i].size() || projections_[i][fronts_[i]] != c) return false;
    }
    return true;
  }

  void consume(LetterId c) {
    ++consumed_;
    if (strict_) return;
    --counts_[c];
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      if (pairs_[i].first == c || pairs_[i].second == c) ++fronts_[i];
  }

  void unconsume(LetterId c) {
    --consumed_;
    if (strict_) return;
    ++counts_[c];
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      if (pairs_[i].first == c || pairs_[i].second == c) --fronts_[i];
  }

  /* Memoization key: cursor positions plus counts fully determine the rest. */
  void append_key(std::string& key) const {
    if (strict_) {
      key.push_back(static_cast<char>(consumed_));
      return;
    }
    for (auto f : fronts_) key.push_back(static_cast<char>(f));
    for (auto c : counts_) key.push_back(static_cast<char>(c));
  }

 private:
  const IndependenceAlphabet* sigma_;
  bool strict_;
  Word u_;
  std::size_t consumed_ = 0;
  std::vector<std::pair<LetterId, LetterId>> pairs_;
  std::vector<Word> projections_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> fronts_;
};

class ScatterSearch {
 public:
  ScatterSearch(const Word& u, const Word& z, const IndependenceAlphabet& sigma, ScatterMode mode)
      : z_(z), sigma_(sigma), residue_(u, sigma, mode == ScatterMode::Strict) {}

  /* Minimal number of u-blocks over all valid assignments, or kInf. */
  auto solve() -> int { return best(0, false, 0); }

  auto witness() -> ScatterWitness {
    std::vector<bool> to_u(z_.size(), false);
    std::size_t pos = 0;
    bool in_u = false;
    std::uint64_t vmask = 0;
    while (!residue_.done()) {
      auto c = z_[pos];
      int take = consume_cost(pos, in_u, vmask, c);
      int skip = best(pos + 1, false, vmask | (std::uint64_t{1} << c));
      if (take <= skip) {
        to_u[pos] = true;
        residue_.consume(c);
        in_u = true;
      } else {
        vmask |= std::uint64_t{1} << c;
        in_u = false;
      }
      ++pos;
    }
    ScatterWitness w;
    w.v_blocks.emplace_back();
    for (std::size_t i = 0; i < z_.size(); ++i) {
      if (to_u[i]) {
        if (i > 0 && to_u[i - 1]) {
          w.u_blocks.back().push_back(z_[i]);
        } else {
          w.u_blocks.emplace_back(Word{z_[i]});
        }
      } else {
        if (w.v_blocks.size() == w.u_blocks.size()) w.v_blocks.emplace_back();
        w.v_blocks.back().push_back(z_[i]);
      }
    }
    while (w.v_blocks.size() < w.u_blocks.size() + 1) w.v_blocks.emplace_back();
    return w;
  }

 private:
  /* Cost of assigning z[pos]=c to u now, including the rest; kInf if invalid. */
  auto consume_cost(std::size_t pos, bool in_u, std::uint64_t vmask, LetterId c) -> int {
    if (!residue_.can_consume(c)) return kInf;
    if ((sigma_.indep_mask(c) & vmask) != vmask) return kInf;
    residue_.consume(c);
    int rest = best(pos + 1, true, vmask);
    residue_.unconsume(c);
    if (rest >= kInf) return kInf;
    return (in_u ? 0 : 1) + rest;
  }

  auto best(std::size_t pos, bool in_u, std::uint64_t vmask) -> int {
    if (residue_.done()) return 0;
    if (pos == z_.size() || z_.size() - pos < residue_.remaining()) return kInf;
    std::string key;
    key.push_back(static_cast<char>(pos));
    key.push_back(in_u ? 1 : 0);
    for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>(vmask >> (8 * i) & 0xff));
    residue_.append_key(key);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    auto c = z_[pos];
    int result = std::min(best(pos + 1, false, vmask | (std::uint64_t{1} << c)),
                          consume_cost(pos, in_u, vmask, c));
    memo_.emplace(std::move(key), result);
    return result;
  }

  const Word& z_;
  const IndependenceAlphabet& sigma_;
  Residue residue_;
  std::unordered_map<std::string, int> memo_;
};

}  // namespace

auto ScatterWitness::scattered() const -> Word {
  Word u;
  for (const auto& b : u_blocks) u.insert(u.end(), b.begin(), b.end());
  return u;
}

auto ScatterWitness::remainder() const -> Word {
  Word v;
  for (const auto& b : v_blocks) v.insert(v.end(), b.begin(), b.end());
  return v;
}

auto scatter_check(const Word& u, const Word& z, const IndependenceAlphabet& sigma,
                   ScatterMode mode, std::optional<std::size_t> max_degree)
    -> std::optional<ScatterWitness> {
  ScatterSearch search(u, z, sigma, mode);
  int degree = search.solve();
  if (degree >= kInf) return std::nullopt;
  if (max_degree && degree > static_cast<int>(*max_degree)) return std::nullopt;
  return search.witness();
}

auto word_connected(const Word& w, const IndependenceAlphabet& sigma) -> bool {
  std::vector<LetterId> present;
  for (auto a : w)
    if (std::find(present.begin(), present.end(), a) == present.end()) present.push_back(a);
  if (present.size() <= 1) return true;
  std::vector<LetterId> reached{present.front()};
  for (std::size_t i = 0; i < reached.size(); ++i) {
    for (auto b : present) {
      if (std::find(reached.begin(), reached.end(), b) != reached.end()) continue;
      if (!sigma.independent(reached[i], b)) reached.push_back(b);
    }
  }
  return reached.size() == present.size();
}

auto semantic_reorder_derivative(const std::vector<Word>& language, const Word& u,
                                 const IndependenceAlphabet& sigma) -> std::vector<Word> {
  std::set<Word> out;
  for (const auto& z : language) {
    if (z.size() < u.size()) continue;
    Residue residue(u, sigma, false);
    Word acc;
    auto walk = [&](auto&& self, std::size_t pos, std::uint64_t vmask) -> void {
      if (residue.done()) {
        Word v = acc;
        v.insert(v.end(), z.begin() + static_cast<std::ptrdiff_t>(pos), z.end());
        out.insert(std::move(v));
        return;
      }
      if (pos == z.size() || z.size() - pos < residue.remaining()) return;
      auto c = z[pos];
      acc.push_back(c);
      self(self, pos + 1, vmask | (std::uint64_t{1} << c));
      acc.pop_back();
      if (residue.can_consume(c) && (sigma.indep_mask(c) & vmask) == vmask) {
        residue.consume(c);
        self(self, pos + 1, vmask);
        residue.unconsume(c);
      }
    };
    walk(walk, 0, 0);
  }
  std::vector<Word> result(out.begin(), out.end());
  std::sort(result.begin(), result.end(), shortlex_less);
  return result;
}

auto semantic_reorderable_part(const std::vector<Word>& language, const Word& u,
                               const IndependenceAlphabet& sigma) -> std::vector<Word> {
  std::uint64_t allowed = ~std::uint64_t{0};
  for (auto a : u) allowed &= sigma.indep_mask(a);
  std::vector<Word> out;
  for (const auto& w : language)
    if ((letter_mask(w) & ~allowed) == 0) out.push_back(w);
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace retrace
