#include <gtest/gtest.h>

#include "lbgsb/io.hpp"
#include "oracles.hpp"

using namespace lbgsb;

namespace {

Alphabet single() { return oracle::alphabet({{"a", 0}}); }

// Star terms with n leaves, exactly one of which is the placeholder.
std::vector<Term> star_terms_by_length(const Alphabet& x, int n) {
  if (n == 1) return {Term::star()};
  std::vector<Term> out;
  for (int k = 1; k < n; ++k) {
    for (auto& l : star_terms_by_length(x, k))
      for (auto& r : oracle::all_terms(x, n - k)) out.push_back(Term::node(l, r));
    for (auto& l : oracle::all_terms(x, k))
      for (auto& r : star_terms_by_length(x, n - k)) out.push_back(Term::node(l, r));
  }
  return out;
}

std::size_t brute_force_composition_count(const std::vector<NAPolynomial>& s, const Alphabet& x) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Term& f = s[i].leading();
      const Term& g = s[j].leading();
      if (g.length() > f.length()) continue;
      for (auto& mu : star_terms_by_length(x, static_cast<int>(f.length() - g.length() + 1))) {
        if (i == j && mu.is_star()) continue;
        if (substitute_star(mu, g) == f) ++count;
      }
    }
  return count;
}

std::size_t catalan(int n) {
  std::size_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace

TEST(FreeNonassoc, MultiplyAndCombine) {
  Alphabet x = oracle::alphabet({{"a", 0}, {"b", 1}});
  Field q = Field::rationals();
  auto p = parse_na_polynomial("(a b) + 2 a", x, q);
  auto r = parse_na_polynomial("b - a", x, q);
  auto prod = na_multiply(p, r);
  EXPECT_EQ(prod, parse_na_polynomial("((a b) b) - ((a b) a) + 2 (a b) - 2 (a a)", x, q));
  EXPECT_EQ(prod.leading(), parse_term("((a b) b)", x));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_THROW(na_multiply(p, NAPolynomial(Field::prime(3), parse_term("a", x), Field::prime(3).one())), FieldError);
}

TEST(FreeNonassoc, ReduceExample) {
  Alphabet x = single();
  Field q = Field::rationals();
  std::vector<NAPolynomial> s{parse_na_polynomial("(a a) - a", x, q)};
  auto r = na_reduce(parse_na_polynomial("((a a) a)", x, q), s);
  EXPECT_EQ(r.remainder, parse_na_polynomial("a", x, q));
}

TEST(FreeNonassoc, CompositionExamples) {
  Alphabet x = single();
  Field q = Field::rationals();
  std::vector<NAPolynomial> bad{parse_na_polynomial("(a a) - a", x, q), parse_na_polynomial("((a a) a)", x, q)};
  auto rep = na_gsb_check(bad, 6);
  EXPECT_FALSE(rep.passed);
  ASSERT_FALSE(rep.failures.empty());
  EXPECT_EQ(rep.failures.front().composition.f, 1u);

  std::vector<NAPolynomial> lone{parse_na_polynomial("((a a) a) - a", x, q)};
  auto ok = na_gsb_check(lone, 6);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.compositions, 0u);
}

TEST(FreeNonassoc, CompositionCountMatchesStarEnumeration) {
  Field q = Field::rationals();
  for (auto x : {single(), oracle::alphabet({{"a", 0}, {"b", 1}})}) {
    auto s = leibniz_relations(x, q, 4);
    EXPECT_EQ(na_inclusion_compositions(s).size(), brute_force_composition_count(s, x));
  }
  Alphabet x = single();
  std::vector<NAPolynomial> s{parse_na_polynomial("(a a) - a", x, q), parse_na_polynomial("((a a) a)", x, q),
                              parse_na_polynomial("((a a) (a a))", x, q)};
  EXPECT_EQ(na_inclusion_compositions(s).size(), brute_force_composition_count(s, x));
}

TEST(FreeNonassoc, CompositionsLieInIdeal) {
  Alphabet x = oracle::alphabet({{"a", 0}, {"b", 1}});
  Field q = Field::rationals();
  auto s = leibniz_relations(x, q, 4);
  for (auto& c : na_inclusion_compositions(s)) {
    auto expected = s[c.f] - substitute_star(c.mu, s[c.g]);
    EXPECT_TRUE(c.composition == expected || c.composition == expected.scaled(-q.one()));
    if (!c.composition.is_zero()) EXPECT_TRUE(term_order_prime(c.composition.leading(), s[c.f].leading()) < 0);
  }
}

TEST(FreeNonassoc, LeibnizRelationsFormGsb) {
  Field q = Field::rationals();
  for (auto x : {single(), oracle::alphabet({{"a", 0}, {"b", 1}})}) {
    auto s = leibniz_relations(x, q, 5);
    auto rep = na_gsb_check(s, 5);
    EXPECT_TRUE(rep.passed) << rep.failures.size() << " failures";
    EXPECT_GT(rep.compositions, 0u);
  }
}

TEST(FreeNonassoc, QuotientDimensions) {
  Field q = Field::rationals();
  Alphabet x = oracle::alphabet({{"a", 0}, {"b", 1}});
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(na_quotient_dimension({}, x, q, n), catalan(n - 1) * (1u << n));
  auto s = leibniz_relations(x, q, 5);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(na_quotient_dimension(s, x, q, n), 1u << n);
  Alphabet one = single();
  EXPECT_THROW(na_quotient_dimension({parse_na_polynomial("(a a) - a", one, q)}, one, q, 3), std::invalid_argument);
  EXPECT_THROW(na_quotient_dimension({}, x, q, 12, 1000), ResourceError);
}

TEST(FreeNonassoc, CatalogSizes) {
  Alphabet x = oracle::alphabet({{"a", 0}, {"b", 0}, {"c", 1}});
  TermCatalog cat(x);
  std::size_t words = 1;
  for (int n = 1; n <= 4; ++n) {
    words *= 3;
    EXPECT_EQ(cat.of_degree(n).size(), catalan(n - 1) * words);
    EXPECT_EQ(cat.of_length(n).size(), cat.of_degree(n).size());
  }
  for (int n = 2; n <= 4; ++n) EXPECT_EQ(cat.star_terms(n, 1).size(), star_terms_by_length(x, n).size());
}
