#include "retrace/reordering.hpp"

#include <algorithm>
#include <unordered_map>

namespace retrace {

namespace {

/* Memoization on node identity keeps walks over shared subterms linear in
   the number of distinct nodes; iterated raw derivatives otherwise unfold
   the term as a tree and blow up exponentially. */
using NodeMemo = std::unordered_map<const void*, Regexp>;

auto reorderable_rec(const Regexp& e, std::uint64_t letters, const IndependenceAlphabet& sigma,
                     NodeMemo& memo) -> Regexp {
  if (auto it = memo.find(e.identity()); it != memo.end()) return it->second;
  Regexp out;
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      out = e;
      break;
    case ReKind::Letter: {
      auto b = e.letter_value().id;
      out = (sigma.indep_mask(b) & letters) == letters ? e : Regexp::zero();
      break;
    }
    case ReKind::Sum:
      out = Regexp::sum(reorderable_rec(e.left(), letters, sigma, memo),
                        reorderable_rec(e.right(), letters, sigma, memo));
      break;
    case ReKind::Cat:
      out = Regexp::cat(reorderable_rec(e.left(), letters, sigma, memo),
                        reorderable_rec(e.right(), letters, sigma, memo));
      break;
    case ReKind::Star:
      out = Regexp::star(reorderable_rec(e.body(), letters, sigma, memo));
      break;
  }
  memo.emplace(e.identity(), out);
  return out;
}

auto derive_rec(const Regexp& e, LetterId a, const IndependenceAlphabet& sigma, NodeMemo& dmemo,
                NodeMemo& rmemo) -> Regexp {
  if (auto it = dmemo.find(e.identity()); it != dmemo.end()) return it->second;
  std::uint64_t mask = std::uint64_t{1} << a;
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
      out = Regexp::sum(derive_rec(e.left(), a, sigma, dmemo, rmemo),
                        derive_rec(e.right(), a, sigma, dmemo, rmemo));
      break;
    case ReKind::Cat:
      out = Regexp::sum(Regexp::cat(derive_rec(e.left(), a, sigma, dmemo, rmemo), e.right()),
                        Regexp::cat(reorderable_rec(e.left(), mask, sigma, rmemo),
                                    derive_rec(e.right(), a, sigma, dmemo, rmemo)));
      break;
    case ReKind::Star:
      out = Regexp::cat(Regexp::cat(Regexp::star(reorderable_rec(e.body(), mask, sigma, rmemo)),
                                    derive_rec(e.body(), a, sigma, dmemo, rmemo)),
                        e);
      break;
  }
  dmemo.emplace(e.identity(), out);
  return out;
}

}  // namespace

auto reorderable_part_masked(const Regexp& e, std::uint64_t letters,
                             const IndependenceAlphabet& sigma) -> Regexp {
  if (letters == 0) return e;
  NodeMemo memo;
  return reorderable_rec(e, letters, sigma, memo);
}

auto reorderable_part(const Regexp& e, LetterId a, const IndependenceAlphabet& sigma) -> Regexp {
  return reorderable_part_masked(e, std::uint64_t{1} << a, sigma);
}

auto reorderable_part(const Regexp& e, const Word& u, const IndependenceAlphabet& sigma) -> Regexp {
  return reorderable_part_masked(e, letter_mask(u), sigma);
}

auto brz_reorder_derive(const Regexp& e, LetterId a, const IndependenceAlphabet& sigma) -> Regexp {
  NodeMemo dmemo;
  NodeMemo rmemo;
  return derive_rec(e, a, sigma, dmemo, rmemo);
}

auto brz_reorder_derive(const Regexp& e, const Word& u, const IndependenceAlphabet& sigma)
    -> Regexp {
  Regexp d = e;
  for (auto a : u) d = brz_reorder_derive(d, a, sigma);
  return d;
}

auto antimirov_reorder_step(const Regexp& e, LetterId a, const IndependenceAlphabet& sigma)
    -> std::vector<Regexp> {
  std::vector<Regexp> out;
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
      break;
    case ReKind::Letter:
      if (e.letter_value().id == a) out.push_back(Regexp::one());
      break;
    case ReKind::Sum: {
      out = antimirov_reorder_step(e.left(), a, sigma);
      auto rs = antimirov_reorder_step(e.right(), a, sigma);
      out.insert(out.end(), rs.begin(), rs.end());
      break;
    }
    case ReKind::Cat: {
      for (const auto& p : antimirov_reorder_step(e.left(), a, sigma))
        out.push_back(Regexp::cat(p, e.right()));
      auto rleft = reorderable_part(e.left(), a, sigma);
      for (const auto& p : antimirov_reorder_step(e.right(), a, sigma))
        out.push_back(Regexp::cat(rleft, p));
      break;
    }
    case ReKind::Star: {
      auto rstar = Regexp::star(reorderable_part(e.body(), a, sigma));
      for (const auto& p : antimirov_reorder_step(e.body(), a, sigma))
        out.push_back(Regexp::cat(Regexp::cat(rstar, p), e));
      break;
    }
  }
  std::sort(out.begin(), out.end(), RegexpLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto antimirov_reorder_parts(const Regexp& e, const Word& u, const IndependenceAlphabet& sigma)
    -> std::vector<Regexp> {
  std::vector<Regexp> parts{e};
  for (auto a : u) {
    std::vector<Regexp> next;
    for (const auto& p : parts) {
      auto step = antimirov_reorder_step(p, a, sigma);
      next.insert(next.end(), step.begin(), step.end());
    }
    std::sort(next.begin(), next.end(), RegexpLess{});
    next.erase(std::unique(next.begin(), next.end()), next.end());
    parts = std::move(next);
  }
  return parts;
}

}  // namespace retrace
