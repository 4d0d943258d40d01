#include "retrace/classical.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace retrace {

namespace {

void dedup_sort(std::vector<Regexp>& v) {
  std::sort(v.begin(), v.end(), RegexpLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/* Memoized on node identity so iterated raw derivatives stay linear in the
   number of distinct shared nodes. */
auto derive_rec(const Regexp& e, LetterId a, std::unordered_map<const void*, Regexp>& memo)
    -> Regexp {
  if (auto it = memo.find(e.identity()); it != memo.end()) return it->second;
  Regexp out;
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      out = Regexp::zero();
      break;
    case ReKind::Letter:
      out = e.letter_value().id == a ? Regexp::one() : Regexp::zero();
      break;
    case ReKind::Sum:
      out = Regexp::sum(derive_rec(e.left(), a, memo), derive_rec(e.right(), a, memo));
      break;
    case ReKind::Cat: {
      auto head = Regexp::cat(derive_rec(e.left(), a, memo), e.right());
      out = nullable(e.left()) ? Regexp::sum(std::move(head), derive_rec(e.right(), a, memo))
                               : std::move(head);
      break;
    }
    case ReKind::Star:
      out = Regexp::cat(derive_rec(e.body(), a, memo), e);
      break;
  }
  memo.emplace(e.identity(), out);
  return out;
}

}  // namespace

auto brzozowski_derive(const Regexp& e, LetterId a) -> Regexp {
  std::unordered_map<const void*, Regexp> memo;
  return derive_rec(e, a, memo);
}

auto brzozowski_derive(const Regexp& e, const Word& u) -> Regexp {
  Regexp d = e;
  for (auto a : u) d = brzozowski_derive(d, a);
  return d;
}

auto antimirov_step(const Regexp& e, LetterId a) -> std::vector<Regexp> {
  std::vector<Regexp> out;
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      break;
    case ReKind::Letter:
      if (e.letter_value().id == a) out.push_back(Regexp::one());
      break;
    case ReKind::Sum: {
      out = antimirov_step(e.left(), a);
      auto rs = antimirov_step(e.right(), a);
      out.insert(out.end(), rs.begin(), rs.end());
      break;
    }
    case ReKind::Cat: {
      for (const auto& p : antimirov_step(e.left(), a)) out.push_back(Regexp::cat(p, e.right()));
      if (nullable(e.left())) {
        auto rs = antimirov_step(e.right(), a);
        out.insert(out.end(), rs.begin(), rs.end());
      }
      break;
    }
    case ReKind::Star:
      for (const auto& p : antimirov_step(e.body(), a)) out.push_back(Regexp::cat(p, e));
      break;
  }
  dedup_sort(out);
  return out;
}

auto antimirov_parts(const Regexp& e, const Word& u) -> std::vector<Regexp> {
  std::vector<Regexp> parts{e};
  for (auto a : u) {
    std::vector<Regexp> next;
    for (const auto& p : parts) {
      auto step = antimirov_step(p, a);
      next.insert(next.end(), step.begin(), step.end());
    }
    dedup_sort(next);
    parts = std::move(next);
  }
  return parts;
}

namespace {

/* Expressions reachable by at least one step, closed under concatenation
   with the surrounding context. */
void plus_closure(const Regexp& e, std::set<Regexp, RegexpLess>& out) {
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      break;
    case ReKind::Letter:
      out.insert(Regexp::one());
      break;
    case ReKind::Sum:
      plus_closure(e.left(), out);
      plus_closure(e.right(), out);
      break;
    case ReKind::Cat: {
      std::set<Regexp, RegexpLess> ls;
      plus_closure(e.left(), ls);
      for (const auto& x : ls) out.insert(Regexp::cat(x, e.right()));
      plus_closure(e.right(), out);
      break;
    }
    case ReKind::Star: {
      std::set<Regexp, RegexpLess> bs;
      plus_closure(e.body(), bs);
      for (const auto& x : bs) out.insert(Regexp::cat(x, e));
      break;
    }
  }
}

}  // namespace

auto classical_closure_set(const Regexp& e) -> std::vector<Regexp> {
  std::set<Regexp, RegexpLess> out;
  out.insert(e);
  plus_closure(e, out);
  return {out.begin(), out.end()};
}

}  // namespace retrace
