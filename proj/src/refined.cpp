#include "retrace/refined.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "retrace/reordering.hpp"

namespace retrace {

namespace {

auto hash_mix(std::size_t seed, std::size_t v) -> std::size_t {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

auto StateListHash::operator()(const StateList& g) const -> std::size_t {
  std::size_t h = 0x115f;
  for (const auto& e : g) h = hash_mix(h, e.hash());
  return h;
}

auto StateListLess::operator()(const StateList& a, const StateList& b) const -> bool {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int d = compare(a[i], b[i]); d != 0) return d < 0;
  return false;
}

auto refined_split_step(const Regexp& e, LetterId a, const IndependenceAlphabet& sigma)
    -> std::vector<SplitPair> {
  std::vector<SplitPair> out;
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      break;
    case ReKind::Letter:
      if (e.letter_value().id == a) out.push_back({Regexp::one(), Regexp::one()});
      break;
    case ReKind::Sum: {
      out = refined_split_step(e.left(), a, sigma);
      auto rs = refined_split_step(e.right(), a, sigma);
      out.insert(out.end(), rs.begin(), rs.end());
      break;
    }
    case ReKind::Cat: {
      for (const auto& s : refined_split_step(e.left(), a, sigma))
        out.push_back({s.left, Regexp::cat(s.right, e.right())});
      auto rleft = reorderable_part(e.left(), a, sigma);
      for (const auto& s : refined_split_step(e.right(), a, sigma))
        out.push_back({Regexp::cat(rleft, s.left), s.right});
      break;
    }
    case ReKind::Star: {
      auto rstar = Regexp::star(reorderable_part(e.body(), a, sigma));
      for (const auto& s : refined_split_step(e.body(), a, sigma))
        out.push_back({Regexp::cat(rstar, s.left), Regexp::cat(s.right, e)});
      break;
    }
  }
  auto less = [](const SplitPair& x, const SplitPair& y) {
    if (int d = compare(x.left, y.left); d != 0) return d < 0;
    return compare(x.right, y.right) < 0;
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto list_step(const StateList& g, LetterId a, const IndependenceAlphabet& sigma,
               std::optional<std::size_t> bound) -> std::vector<StateList> {
  if (g.empty()) throw std::invalid_argument("list_step: empty state list");
  if (bound && g.size() > *bound + 1)
    throw std::invalid_argument("list_step: list longer than bound + 1");

  std::set<StateList, StateListLess> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    auto splits = refined_split_step(g[k], a, sigma);
    if (splits.empty()) continue;

    StateList prefix;  // R_a applied to everything before position k
    for (std::size_t i = 0; i < k; ++i) prefix.push_back(reorderable_part(g[i], a, sigma));
    std::size_t suffix_len = g.size() - k - 1;

    for (const auto& s : splits) {
      auto emit = [&](bool keep_left, bool keep_right) {
        StateList next = prefix;
        if (keep_left) next.push_back(s.left);
        if (keep_right) next.push_back(s.right);
        next.insert(next.end(), g.begin() + static_cast<std::ptrdiff_t>(k) + 1, g.end());
        out.insert(std::move(next));
      };
      if (!bound || g.size() - 1 < *bound) emit(true, true);
      if (nullable(s.left) && k > 0) emit(false, true);
      if (nullable(s.right) && suffix_len > 0) emit(true, false);
      if (nullable(s.left) && nullable(s.right) && k > 0 && suffix_len > 0) emit(false, false);
    }
  }
  return {out.begin(), out.end()};
}

auto refined_derive(const Regexp& e, const Word& u, const IndependenceAlphabet& sigma,
                    std::optional<std::size_t> bound) -> std::vector<StateList> {
  std::set<StateList, StateListLess> frontier;
  frontier.insert(StateList{e});
  for (auto a : u) {
    std::set<StateList, StateListLess> next;
    for (const auto& g : frontier)
      for (auto& h : list_step(g, a, sigma, bound)) next.insert(std::move(h));
    frontier = std::move(next);
  }
  return {frontier.begin(), frontier.end()};
}

auto refined_membership(const Regexp& e, const Word& u, const IndependenceAlphabet& sigma,
                        std::optional<std::size_t> bound) -> bool {
  if (u.empty()) return nullable(e);
  std::unordered_set<StateList, StateListHash> frontier{StateList{e}};
  for (auto a : u) {
    std::unordered_set<StateList, StateListHash> next;
    for (const auto& g : frontier)
      for (auto& h : list_step(g, a, sigma, bound)) next.insert(std::move(h));
    frontier = std::move(next);
    if (frontier.empty()) return false;
  }
  for (const auto& g : frontier)
    if (g.size() == 2 && nullable(g[0]) && nullable(g[1])) return true;
  return false;
}

namespace {

void squiggle(const Regexp& e, std::set<Regexp, RegexpLess>& out) {
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      break;
    case ReKind::Letter:
      out.insert(Regexp::one());
      break;
    case ReKind::Sum:
      squiggle(e.left(), out);
      squiggle(e.right(), out);
      break;
    case ReKind::Cat: {
      std::set<Regexp, RegexpLess> ls, rs;
      squiggle(e.left(), ls);
      squiggle(e.right(), rs);
      out.insert(ls.begin(), ls.end());
      out.insert(rs.begin(), rs.end());
      for (const auto& x : ls) out.insert(Regexp::cat(x, e.right()));
      for (const auto& y : rs) out.insert(Regexp::cat(e.left(), y));
      for (const auto& x : ls)
        for (const auto& y : rs) out.insert(Regexp::cat(x, y));
      break;
    }
    case ReKind::Star: {
      std::set<Regexp, RegexpLess> bs;
      squiggle(e.body(), bs);
      out.insert(bs.begin(), bs.end());
      for (const auto& x : bs) {
        out.insert(Regexp::cat(e, x));
        out.insert(Regexp::cat(x, e));
        for (const auto& y : bs) {
          out.insert(Regexp::cat(x, Regexp::cat(e, y)));
          out.insert(Regexp::cat(Regexp::cat(x, e), y));
        }
      }
      break;
    }
  }
}

}  // namespace

auto refined_closure_sets(const Regexp& e, const IndependenceAlphabet& sigma) -> ClosureSets {
  std::set<Regexp, RegexpLess> sq;
  squiggle(e, sq);

  std::set<Regexp, RegexpLess> star;
  star.insert(e);
  if (sigma.size() > 20)
    throw std::invalid_argument("refined_closure_sets: alphabet too large for subset sweep");
  std::uint64_t subsets = std::uint64_t{1} << sigma.size();
  for (const auto& x : sq)
    for (std::uint64_t mask = 0; mask < subsets; ++mask)
      star.insert(reorderable_part_masked(x, mask, sigma));

  ClosureSets sets;
  sets.squiggle_plus.assign(sq.begin(), sq.end());
  sets.to_star.assign(star.begin(), star.end());
  return sets;
}

}  // namespace retrace
