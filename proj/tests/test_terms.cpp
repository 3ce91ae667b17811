#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace lbgsb;

namespace {

Alphabet ab() { return oracle::alphabet({{"a", 0}, {"b", 1}}); }

int sgn(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

std::vector<Term> terms_up_to(const Alphabet& x, int n) {
  std::vector<Term> out;
  for (int k = 1; k <= n; ++k)
    for (auto& t : oracle::all_terms(x, k)) out.push_back(t);
  return out;
}

}  // namespace

TEST(Terms, ParseAndPrint) {
  Alphabet x = ab();
  Term t = parse_term("((a b) a)", x);
  EXPECT_EQ(t.length(), 3u);
  EXPECT_EQ(t.degree(), 3u);
  EXPECT_EQ(t.parity(), 1);
  EXPECT_EQ(to_string(t, x), "((a b) a)");
  EXPECT_EQ(parse_term("[a b a]", x), t);
  EXPECT_EQ(to_string(parse_term("(a (b a))", x), x), "(a (b a))");
}

TEST(Terms, ParseErrors) {
  Alphabet x = ab();
  EXPECT_THROW(parse_term("(a b", x), ParseError);
  EXPECT_THROW(parse_term("(a c)", x), ParseError);
  EXPECT_THROW(parse_term("(a b) a", x), ParseError);
  EXPECT_THROW(parse_term("[]", x), ParseError);
  EXPECT_THROW(parse_term("*", x), ParseError);
  EXPECT_THROW(parse_star_term("(a b)", x), ParseError);
  EXPECT_THROW(parse_star_term("(* *)", x), ParseError);
  EXPECT_NO_THROW(parse_star_term("(a *)", x));
}

TEST(Terms, AlphabetRejectsDuplicatesAndBadNames) {
  Alphabet x = ab();
  EXPECT_ANY_THROW(x.add({"a", 0, 1}));
  EXPECT_ANY_THROW(x.add({"1x", 0, 1}));
  EXPECT_ANY_THROW(x.add({"c", 2, 1}));
  EXPECT_ANY_THROW(x.add({"c", 0, 0}));
}

TEST(Terms, OrderPrimeExamples) {
  Alphabet x = ab();
  auto lt = [&](const char* s, const char* t) { return term_order_prime(parse_term(s, x), parse_term(t, x)) < 0; };
  EXPECT_TRUE(lt("a", "b"));
  EXPECT_TRUE(lt("b", "(a a)"));
  // Same length: compare the last right factor first.
  EXPECT_TRUE(lt("((b b) a)", "((a a) b)"));
  EXPECT_TRUE(lt("(a (a a))", "((a a) a)") != lt("((a a) a)", "(a (a a))"));
  EXPECT_TRUE(lt("((a a) a)", "(a (a a))"));
  EXPECT_TRUE(lt("((a a) b)", "(a (a b))"));
}

TEST(Terms, OrderPrimeMatchesReferenceExhaustively) {
  Alphabet x = ab();
  auto all = terms_up_to(x, 5);
  ASSERT_EQ(all.size(), 2u + 4u + 16u + 80u + 448u);
  for (auto& s : all)
    for (auto& t : all) ASSERT_EQ(sgn(term_order_prime(s, t)), oracle::compare_prime(s, t)) << to_string(s, x) << " vs " << to_string(t, x);
}

TEST(Terms, OrderPrimeIsMonomialOrder) {
  Alphabet x = ab();
  auto all = terms_up_to(x, 5);
  auto small = terms_up_to(x, 2);
  for (auto& mu : all)
    for (auto& nu : all) {
      if (term_order_prime(mu, nu) >= 0) continue;
      for (auto& eta : small) {
        ASSERT_TRUE(term_order_prime(Term::node(mu, eta), Term::node(nu, eta)) < 0);
        ASSERT_TRUE(term_order_prime(Term::node(eta, mu), Term::node(eta, nu)) < 0);
      }
    }
}

TEST(Terms, OrderPrimeIsTotalAndTransitive) {
  Alphabet x = ab();
  auto all = terms_up_to(x, 4);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      EXPECT_EQ(term_order_prime(all[i], all[j]) == 0, i == j);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int n = 0; n < 20000; ++n) {
    auto &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
    if (term_order_prime(a, b) < 0 && term_order_prime(b, c) < 0) EXPECT_TRUE(term_order_prime(a, c) < 0);
  }
}

TEST(Terms, MonomialCompare) {
  Alphabet x = oracle::alphabet({{"x", 0}, {"y", 0}});
  auto m = [&](std::initializer_list<Letter> l) { return x.monomial(Word(l)); };
  EXPECT_TRUE(monomial_compare(m({1}), m({0, 0})) < 0);
  EXPECT_TRUE(monomial_compare(m({0, 1, 1}), m({1, 0, 0})) < 0);
  EXPECT_TRUE(monomial_compare(m({1, 0, 0}), m({1, 0, 1})) < 0);
  EXPECT_TRUE(monomial_compare(m({0, 1}), m({0, 1})) == 0);
  Alphabet w;
  w.add({"u", 0, 2});
  w.add({"v", 0, 1});
  // Degree dominates length.
  EXPECT_TRUE(monomial_compare(w.monomial(Word{1, 1}), w.monomial(Word{0, 1})) < 0);
  EXPECT_TRUE(monomial_compare(w.monomial(Word{0}), w.monomial(Word{1, 1})) < 0);
}

TEST(Terms, MonomialOrderIsCompatibleWithConcatenation) {
  Alphabet x = oracle::alphabet({{"x", 0}, {"y", 1}, {"z", 0}});
  auto words = words_up_to(x, 3);
  for (auto& u : words)
    for (auto& v : words) {
      if (!(u < v)) continue;
      for (Letter a = 0; a < x.size(); ++a) {
        EXPECT_LT(concat(u, x.letter(a)), concat(v, x.letter(a)));
        EXPECT_LT(concat(x.letter(a), u), concat(x.letter(a), v));
      }
    }
}

TEST(Terms, LeftNormedAndSubstitution) {
  Alphabet x = ab();
  Word w{0, 1, 1};
  Term t = left_normed(x, w);
  EXPECT_EQ(to_string(t, x), "((a b) b)");
  EXPECT_EQ(left_normed_word(t), w);
  EXPECT_TRUE(left_normed_word(parse_term("(a (b b))", x)).empty());
  EXPECT_EQ(t.parity(), 0);
  StarTerm mu = parse_star_term("(a (* b))", x);
  Term g = parse_term("(b a)", x);
  EXPECT_EQ(to_string(substitute_star(mu, g), x), "(a ((b a) b))");
  EXPECT_EQ(substitute_star(Term::star(), g), g);
  EXPECT_EQ(substitute_star(mu, g).length(), mu.length() - 1 + g.length());
}

TEST(Terms, MonomialMetadata) {
  Alphabet x = ab();
  Monomial m = x.monomial(Word{1, 0, 1});
  EXPECT_EQ(m.degree, 3u);
  EXPECT_EQ(m.parity, 0);
  EXPECT_EQ(to_string(m, x), "[b a b]");
  EXPECT_EQ(to_string(subword(x, m, 1, 3), x), "[a b]");
  EXPECT_EQ(words_of_degree(x, 3).size(), 8u);
}
