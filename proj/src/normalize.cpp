#include "retrace/normalize.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace retrace {

namespace {

void collect_summands(const Regexp& e, std::vector<Regexp>& out) {
  if (e.kind() == ReKind::Sum) {
    collect_summands(e.left(), out);
    collect_summands(e.right(), out);
  } else if (e.kind() != ReKind::Zero) {
    out.push_back(e);
  }
}

void collect_factors(const Regexp& e, std::vector<Regexp>& out) {
  if (e.kind() == ReKind::Cat) {
    collect_factors(e.left(), out);
    collect_factors(e.right(), out);
  } else if (e.kind() != ReKind::One) {
    out.push_back(e);
  }
}

class Normalizer {
 public:
  explicit Normalizer(TheoryTier tier) : tier_(tier) {}

  auto run(const Regexp& e) -> Regexp {
    if (auto it = memo_.find(e); it != memo_.end()) return it->second;
    Regexp result = rewrite(e);
    memo_.emplace(e, result);
    return result;
  }

 private:
  auto rewrite(const Regexp& e) -> Regexp {
    switch (e.kind()) {
      case ReKind::Zero:
      case ReKind::One:
      case ReKind::Letter:
        return e;
      case ReKind::Sum: {
        std::vector<Regexp> terms;
        collect_summands(run(e.left()), terms);
        collect_summands(run(e.right()), terms);
        std::sort(terms.begin(), terms.end(), RegexpLess{});
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        if (terms.empty()) return Regexp::zero();
        Regexp acc = terms.front();
        for (std::size_t i = 1; i < terms.size(); ++i) acc = Regexp::sum(acc, terms[i]);
        return acc;
      }
      case ReKind::Cat: {
        std::vector<Regexp> factors;
        collect_factors(run(e.left()), factors);
        collect_factors(run(e.right()), factors);
        for (const auto& f : factors)
          if (f.kind() == ReKind::Zero) return Regexp::zero();
        if (tier_ == TheoryTier::T1) {
          std::vector<Regexp> merged;
          for (auto& f : factors) {
            if (f.kind() == ReKind::Star && !merged.empty() && merged.back() == f) continue;
            merged.push_back(std::move(f));
          }
          factors = std::move(merged);
        }
        if (factors.empty()) return Regexp::one();
        Regexp acc = factors.front();
        for (std::size_t i = 1; i < factors.size(); ++i) acc = Regexp::cat(acc, factors[i]);
        return acc;
      }
      case ReKind::Star: {
        Regexp b = run(e.body());
        if (tier_ == TheoryTier::T1 && (b.kind() == ReKind::Zero || b.kind() == ReKind::One))
          return Regexp::one();
        return Regexp::star(b);
      }
    }
    return e;
  }

  TheoryTier tier_;
  std::unordered_map<Regexp, Regexp, RegexpHash> memo_;
};

}  // namespace

auto normalize(const Regexp& e, TheoryTier tier) -> Regexp { return Normalizer(tier).run(e); }

auto equal_mod(const Regexp& a, const Regexp& b, TheoryTier tier) -> bool {
  return normalize(a, tier) == normalize(b, tier);
}

}  // namespace retrace
