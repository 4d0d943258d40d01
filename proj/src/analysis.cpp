#include "retrace/analysis.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "retrace/classical.hpp"
#include "retrace/oracle.hpp"

namespace retrace {

namespace {

auto mask_connected(std::uint64_t mask, const IndependenceAlphabet& sigma) -> bool {
  Word distinct;
  for (LetterId a = 0; a < sigma.size(); ++a) {
    if (mask >> a & 1U) distinct.push_back(a);
  }
  return word_connected(distinct, sigma);
}

}  // namespace

auto language_connected(const Regexp& e, const IndependenceAlphabet& sigma) -> bool {
  // Pairs (partial derivative, set of letters consumed so far); a nullable
  // derivative witnesses a language word built from exactly that letter set.
  struct Less {
    auto operator()(const std::pair<Regexp, std::uint64_t>& x,
                    const std::pair<Regexp, std::uint64_t>& y) const -> bool {
      if (x.second != y.second) return x.second < y.second;
      return compare(x.first, y.first) < 0;
    }
  };
  std::set<std::pair<Regexp, std::uint64_t>, Less> seen;
  std::deque<std::pair<Regexp, std::uint64_t>> queue;
  auto push = [&](Regexp p, std::uint64_t mask) {
    if (seen.emplace(p, mask).second) queue.emplace_back(std::move(p), mask);
  };
  push(e, 0);
  while (!queue.empty()) {
    auto [p, mask] = queue.front();
    queue.pop_front();
    if (nullable(p) && !mask_connected(mask, sigma)) return false;
    for (LetterId a = 0; a < sigma.size(); ++a) {
      for (const auto& q : antimirov_step(p, a)) {
        push(q, mask | (1ULL << a));
      }
    }
  }
  return true;
}

auto star_connected(const Regexp& e, const IndependenceAlphabet& sigma) -> bool {
  switch (e.kind()) {
    case ReKind::Zero:
    case ReKind::One:
    case ReKind::Letter:
      return true;
    case ReKind::Sum:
    case ReKind::Cat:
      return star_connected(e.left(), sigma) && star_connected(e.right(), sigma);
    case ReKind::Star:
      return star_connected(e.body(), sigma) && language_connected(e.body(), sigma);
  }
  return true;
}

namespace {

using Keyed = std::unordered_map<TraceKey, std::vector<const Word*>, TraceKeyHash>;

auto group_by_key(const std::vector<Word>& lang, const IndependenceAlphabet& sigma,
                  std::size_t max_len) -> std::vector<Keyed> {
  std::vector<Keyed> keyed(max_len + 1);
  for (const auto& w : lang) {
    if (w.size() <= max_len) keyed[w.size()][trace_key(w, sigma)].push_back(&w);
  }
  return keyed;
}

auto used_letters(const std::vector<Word>& lang, const IndependenceAlphabet& sigma)
    -> std::vector<LetterId> {
  std::uint64_t mask = 0;
  for (const auto& w : lang) mask |= letter_mask(w);
  std::vector<LetterId> out;
  for (LetterId a = 0; a < sigma.size(); ++a) {
    if (mask >> a & 1U) out.push_back(a);
  }
  return out;
}

/* Does one language word z cover the split u.v of a closure word?  The
   scatter residue check guarantees the remainder is equivalent to v by
   cancellation, so only the u side needs searching. */
auto split_covered(const Word& u, const std::vector<const Word*>& candidates,
                   const IndependenceAlphabet& sigma, std::size_t bound) -> bool {
  for (const Word* z : candidates) {
    if (scatter_check(u, *z, sigma, ScatterMode::BothEquiv, bound)) return true;
  }
  return false;
}

auto word_uniformly_covered(const Word& w, const std::vector<const Word*>& candidates,
                            const IndependenceAlphabet& sigma, std::size_t bound) -> bool {
  for (const Word* z : candidates) {
    bool all = true;
    for (std::size_t i = 0; i <= w.size() && all; ++i) {
      Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      if (!scatter_check(u, *z, sigma, ScatterMode::BothEquiv, bound)) all = false;
    }
    if (all) return true;
  }
  return false;
}

/* Runs fn on every length-len word over `letters`; stops early on false. */
template <typename Fn>
auto for_each_tuple(const std::vector<LetterId>& letters, std::size_t len, Fn&& fn) -> bool {
  if (len > 0 && letters.empty()) return true;
  Word w(len);
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    for (std::size_t i = 0; i < len; ++i) w[i] = letters[idx[i]];
    if (!fn(w)) return false;
    std::size_t j = len;
    while (j > 0 && ++idx[j - 1] == letters.size()) {
      idx[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
  }
  return true;
}

}  // namespace

auto check_rank(const Regexp& e, const IndependenceAlphabet& sigma, std::size_t bound,
                std::size_t max_len) -> RankVerdict {
  RankVerdict v;
  v.claim = RankClaim::Rank;
  v.bound = bound;
  v.max_len = max_len;
  auto lang = enumerate_language(e, max_len, std::max<std::size_t>(max_len, 12));
  auto keyed = group_by_key(lang, sigma, max_len);
  auto letters = used_letters(lang, sigma);
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (keyed[len].empty()) continue;
    bool finished = for_each_tuple(letters, len, [&](const Word& w) {
      auto it = keyed[len].find(trace_key(w, sigma));
      if (it == keyed[len].end()) return true;
      ++v.words_checked;
      for (std::size_t i = 0; i <= len; ++i) {
        Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        if (!split_covered(u, it->second, sigma, bound)) {
          v.holds = false;
          v.witness_word = w;
          v.witness_split = {u, Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end())};
          return false;
        }
      }
      return true;
    });
    if (!finished) return v;
  }
  return v;
}

auto check_uniform_rank(const Regexp& e, const IndependenceAlphabet& sigma, std::size_t bound,
                        std::size_t max_len, const std::vector<Word>& words) -> RankVerdict {
  RankVerdict v;
  v.claim = RankClaim::UniformRank;
  v.bound = bound;
  v.max_len = max_len;
  std::size_t need = max_len;
  for (const auto& w : words) need = std::max(need, w.size());
  auto lang = enumerate_language(e, need, std::max<std::size_t>(need, 12));
  auto keyed = group_by_key(lang, sigma, need);

  auto examine = [&](const Word& w, const std::vector<const Word*>& candidates) -> bool {
    ++v.words_checked;
    if (!word_uniformly_covered(w, candidates, sigma, bound)) {
      v.holds = false;
      v.witness_word = w;
      return false;
    }
    return true;
  };

  if (!words.empty()) {
    for (const auto& w : words) {
      auto it = keyed[w.size()].find(trace_key(w, sigma));
      if (it == keyed[w.size()].end()) {
        throw std::invalid_argument("word '" + format_word(w, sigma) +
                                    "' is not in the trace closure of the language");
      }
      if (!examine(w, it->second)) return v;
    }
    return v;
  }

  auto letters = used_letters(lang, sigma);
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (keyed[len].empty()) continue;
    bool finished = for_each_tuple(letters, len, [&](const Word& w) {
      auto it = keyed[len].find(trace_key(w, sigma));
      if (it == keyed[len].end()) return true;
      return examine(w, it->second);
    });
    if (!finished) return v;
  }
  return v;
}

}  // namespace retrace
