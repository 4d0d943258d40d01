#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "retrace/alphabet.hpp"
#include "retrace/oracle.hpp"
#include "retrace/regexp.hpp"

/* Test-side oracles, written as directly as possible from the definitions so
   they share no code (and ideally no ideas) with the library versions. */

namespace th {

using retrace::IndependenceAlphabet;
using retrace::LetterId;
using retrace::Regexp;
using retrace::ReKind;
using retrace::Word;

inline auto cat_words(const Word& a, const Word& b) -> Word {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/* Language of e up to max_len by structural recursion on the syntax. */
inline auto brute_language(const Regexp& e, std::size_t max_len) -> std::set<Word> {
  switch (e.kind()) {
    case ReKind::Zero:
      return {};
    case ReKind::One:
      return {Word{}};
    case ReKind::Letter:
      if (max_len == 0) return {};
      return {Word{e.letter_value().id}};
    case ReKind::Sum: {
      auto out = brute_language(e.left(), max_len);
      auto r = brute_language(e.right(), max_len);
      out.insert(r.begin(), r.end());
      return out;
    }
    case ReKind::Cat: {
      auto l = brute_language(e.left(), max_len);
      auto r = brute_language(e.right(), max_len);
      std::set<Word> out;
      for (const auto& u : l) {
        for (const auto& v : r) {
          if (u.size() + v.size() <= max_len) out.insert(cat_words(u, v));
        }
      }
      return out;
    }
    case ReKind::Star: {
      auto base = brute_language(e.body(), max_len);
      std::set<Word> out{Word{}};
      bool grew = true;
      while (grew) {
        grew = false;
        std::set<Word> add;
        for (const auto& u : out) {
          for (const auto& v : base) {
            if (v.empty() || u.size() + v.size() > max_len) continue;
            Word t = cat_words(u, v);
            if (!out.count(t)) add.insert(t);
          }
        }
        for (const auto& t : add) {
          out.insert(t);
          grew = true;
        }
      }
      return out;
    }
  }
  return {};
}

/* Trace-equivalence class of w by closing under adjacent independent swaps. */
inline auto swap_closure(const Word& w, const IndependenceAlphabet& sigma) -> std::set<Word> {
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!sigma.independent(cur[i], cur[i + 1])) continue;
      Word next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

/* Strict scattering via position subsets: u sits in z at positions S iff
   z restricted to S spells u and every unselected position is independent
   of every selected position to its right.  Degree = number of maximal
   runs of S. */
inline auto subset_spells(const Word& z, std::uint32_t s, const Word& u) -> bool {
  std::size_t k = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(s >> i & 1U)) continue;
    if (k >= u.size() || z[i] != u[k]) return false;
    ++k;
  }
  return k == u.size();
}

inline auto subset_admissible(const Word& z, std::uint32_t s, const IndependenceAlphabet& sigma)
    -> bool {
  for (std::size_t q = 0; q < z.size(); ++q) {
    if (s >> q & 1U) continue;
    for (std::size_t p = q + 1; p < z.size(); ++p) {
      if ((s >> p & 1U) && !sigma.independent(z[q], z[p])) return false;
    }
  }
  return true;
}

inline auto subset_runs(const Word& z, std::uint32_t s) -> std::size_t {
  std::size_t runs = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < z.size(); ++i) {
    bool sel = s >> i & 1U;
    if (sel && !in_run) ++runs;
    in_run = sel;
  }
  return runs;
}

inline auto subset_rest(const Word& z, std::uint32_t s) -> Word {
  Word out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(s >> i & 1U)) out.push_back(z[i]);
  }
  return out;
}

/* Minimal strict-scatter degree of u inside z, or nothing. */
inline auto brute_scatter_degree(const Word& u, const Word& z, const IndependenceAlphabet& sigma)
    -> std::optional<std::size_t> {
  if (z.size() > 20) return std::nullopt;  // keep the brute force honest
  std::optional<std::size_t> best;
  for (std::uint32_t s = 0; s < (1U << z.size()); ++s) {
    if (!subset_spells(z, s, u)) continue;
    if (!subset_admissible(z, s, sigma)) continue;
    std::size_t d = subset_runs(z, s);
    if (!best || d < *best) best = d;
  }
  return best;
}

/* Reordering concatenation via the same subset characterization. */
inline auto brute_reorder_concat(const Word& u, const Word& v, const IndependenceAlphabet& sigma)
    -> std::set<Word> {
  std::set<Word> out;
  std::size_t n = u.size() + v.size();
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    Word z;
    std::size_t i = 0, j = 0;
    bool ok = true;
    for (std::size_t p = 0; p < n && ok; ++p) {
      if (s >> p & 1U) {
        if (i < u.size()) {
          z.push_back(u[i++]);
        } else {
          ok = false;
        }
      } else {
        if (j < v.size()) {
          z.push_back(v[j++]);
        } else {
          ok = false;
        }
      }
    }
    if (!ok || i != u.size() || j != v.size()) continue;
    if (subset_admissible(z, s, sigma)) out.insert(z);
  }
  return out;
}

inline auto keys_of(const std::vector<Word>& words, const IndependenceAlphabet& sigma)
    -> std::set<std::pair<std::size_t, std::string>> {
  std::set<std::pair<std::size_t, std::string>> out;
  for (const auto& w : words) {
    Word least = *swap_closure(w, sigma).begin();
    out.emplace(w.size(), retrace::format_word(least, sigma));
  }
  return out;
}

/* Random expression trees for round-trip and agreement properties. */
inline auto random_regexp(std::mt19937& rng, const IndependenceAlphabet& sigma, int budget)
    -> Regexp {
  std::uniform_int_distribution<int> pick(0, budget <= 1 ? 2 : 5);
  switch (pick(rng)) {
    case 0:
      return Regexp::zero();
    case 1:
      return Regexp::one();
    case 2: {
      std::uniform_int_distribution<std::size_t> li(0, sigma.size() - 1);
      return Regexp::letter(sigma.letter(static_cast<LetterId>(li(rng))));
    }
    case 3:
      return Regexp::sum(random_regexp(rng, sigma, budget / 2),
                         random_regexp(rng, sigma, budget / 2));
    case 4:
      return Regexp::cat(random_regexp(rng, sigma, budget / 2),
                         random_regexp(rng, sigma, budget / 2));
    default:
      return Regexp::star(random_regexp(rng, sigma, budget - 1));
  }
}

inline auto ab_alphabet() -> IndependenceAlphabet {
  return retrace::parse_alphabet("letters: a b\nindep: a b");
}

inline auto abc_free() -> IndependenceAlphabet {
  return retrace::parse_alphabet("letters: a b c");
}

/* a and b commute, c depends on both. */
inline auto abc_partial() -> IndependenceAlphabet {
  return retrace::parse_alphabet("letters: a b c\nindep: a b");
}

}  // namespace th
