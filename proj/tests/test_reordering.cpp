#include "retrace/reordering.hpp"

#include "doctest.h"
#include "helpers.hpp"
#include "retrace/classical.hpp"
#include "retrace/oracle.hpp"

#include <random>
#include <set>

using namespace retrace;

namespace {

auto words_upto(const IndependenceAlphabet& sigma, std::size_t max_len) -> std::vector<Word> {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (LetterId a = 0; a < sigma.size(); ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(w);
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace

TEST_CASE("reorderable part replaces dependent letters by 0") {
  auto sigma = th::abc_partial();
  auto r = [&](const std::string& e, const std::string& u) {
    return render_regexp(
        reorderable_part(parse_regexp(e, sigma), parse_word(u, sigma), sigma));
  };
  CHECK(r("b", "a") == "b");
  CHECK(r("a", "a") == "0");   // independence is irreflexive
  CHECK(r("c", "a") == "0");
  CHECK(r("(ab)*", "b") == "(a0)*");
  CHECK(r("b*(a+c)", "a") == "b*(0+0)");
  CHECK(r("a+b+c", "c") == "0+0+0");
  CHECK(r("(ab)*", "ab") == "(00)*");
  CHECK(r("a(b+c)", "") == "a(b+c)");  // empty word changes nothing
}

TEST_CASE("reorderable part composes over letter sets") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    auto e = th::random_regexp(rng, sigma, 10);
    for (std::uint64_t x = 0; x < 8; ++x) {
      for (std::uint64_t y = 0; y < 8; ++y) {
        CHECK(reorderable_part_masked(reorderable_part_masked(e, x, sigma), y, sigma) ==
              reorderable_part_masked(e, x | y, sigma));
      }
    }
  }
}

TEST_CASE("reorderable part matches its semantic definition") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(4242);
  auto us = words_upto(sigma, 2);
  for (int i = 0; i < 120; ++i) {
    auto e = th::random_regexp(rng, sigma, 10);
    auto lang = enumerate_language(e, 4);
    for (const auto& u : us) {
      auto syntactic = enumerate_language(reorderable_part(e, u, sigma), 4);
      CHECK(syntactic == semantic_reorderable_part(lang, u, sigma));
    }
  }
}

TEST_CASE("reordering derivative goldens on a commuting star") {
  auto sigma = th::abc_partial();
  auto e = parse_regexp("(ab)*", sigma);
  auto d_b = brz_reorder_derive(e, sigma.id("b"), sigma);
  CHECK(d_b == parse_regexp("(a0)*(0b+a1)(ab)*", sigma));
  CHECK(render_regexp(d_b) == "(a0)*(0b+a1)(ab)*");

  auto d_a = brz_reorder_derive(e, sigma.id("a"), sigma);
  CHECK(d_a == parse_regexp("(0b)*(1b+00)(ab)*", sigma));

  // The concatenation rule keeps both summands unconditionally.
  auto d = brz_reorder_derive(parse_regexp("ab", sigma), sigma.id("b"), sigma);
  CHECK(render_regexp(d) == "0b+a1");
}

TEST_CASE("reordering derivatives decide trace-closure membership") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(1111);
  auto us = words_upto(sigma, 4);
  for (int i = 0; i < 60; ++i) {
    auto e = th::random_regexp(rng, sigma, 9);
    for (const auto& u : us) {
      CHECK(nullable(brz_reorder_derive(e, u, sigma)) == closure_member_oracle(e, u, sigma));
    }
  }
}

TEST_CASE("membership goldens through the derivative") {
  auto sigma = th::abc_partial();
  auto member = [&](const std::string& e, const std::string& u) {
    return nullable(brz_reorder_derive(parse_regexp(e, sigma), parse_word(u, sigma), sigma));
  };
  CHECK(member("(ab)*", "ba"));
  CHECK(member("(ab)*", "bbaa"));
  CHECK_FALSE(member("(ab)*", "bb"));
  CHECK(member("a*b*", "ba"));
  CHECK(member("(abc)*", "bac"));
  CHECK_FALSE(member("(abc)*", "acb"));  // c does not commute
  CHECK(member("c(a+b)", "ca"));
  CHECK_FALSE(member("c(a+b)", "ac"));
}

TEST_CASE("syntactic and semantic reordering derivatives have the same language") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(321);
  auto us = words_upto(sigma, 2);
  for (int i = 0; i < 100; ++i) {
    auto e = th::random_regexp(rng, sigma, 10);
    for (const auto& u : us) {
      auto lang = enumerate_language(e, 4 + u.size(), 12);
      std::vector<Word> sem;
      for (auto& w : semantic_reorder_derivative(lang, u, sigma)) {
        if (w.size() <= 4) sem.push_back(std::move(w));
      }
      auto syn = enumerate_language(brz_reorder_derive(e, u, sigma), 4);
      CHECK(syn == sem);
    }
  }
}

TEST_CASE("reordering partial derivatives") {
  auto sigma = th::abc_partial();
  auto parts = [&](const std::string& e, const std::string& a) {
    std::vector<std::string> out;
    for (const auto& p :
         antimirov_reorder_step(parse_regexp(e, sigma), sigma.id(a), sigma))
      out.push_back(render_regexp(p));
    return out;
  };
  CHECK(parts("a", "a") == std::vector<std::string>{"1"});
  CHECK(parts("ab", "b") == std::vector<std::string>{"a1"});
  CHECK(parts("(ab)*", "b") == std::vector<std::string>{"(a0)*(a1)(ab)*"});
  CHECK(parts("ab+ba", "b") == std::vector<std::string>{"a1", "1a"});
  CHECK(parts("c", "a").empty());
}

TEST_CASE("reordering partial derivatives cover the full derivative") {
  auto sigma = th::abc_partial();
  std::mt19937 rng(777);
  for (int i = 0; i < 120; ++i) {
    auto e = th::random_regexp(rng, sigma, 10);
    for (LetterId a = 0; a < sigma.size(); ++a) {
      auto whole = th::brute_language(brz_reorder_derive(e, a, sigma), 4);
      std::set<Word> pieces;
      for (const auto& p : antimirov_reorder_step(e, a, sigma)) {
        auto l = th::brute_language(p, 4);
        pieces.insert(l.begin(), l.end());
      }
      CHECK(pieces == whole);
    }
  }
}

TEST_CASE("with an empty independence relation the engines collapse to classical") {
  auto sigma = th::abc_free();
  std::mt19937 rng(4096);
  auto us = words_upto(sigma, 3);
  for (int i = 0; i < 60; ++i) {
    auto e = th::random_regexp(rng, sigma, 9);
    for (const auto& u : us) {
      auto reorder = brz_reorder_derive(e, u, sigma);
      auto classical = brzozowski_derive(e, u);
      CHECK(nullable(reorder) == nullable(classical));
      CHECK(th::brute_language(reorder, 3) == th::brute_language(classical, 3));
    }
  }
}
