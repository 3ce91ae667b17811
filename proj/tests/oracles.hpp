#pragma once

#include <map>
#include <random>
#include <vector>

#include "lbgsb/lbgsb.hpp"

namespace oracle {

using namespace lbgsb;

// Reference <' comparison from the defining tuple (length, mu_n, ..., mu_1, head).
inline int compare_prime(const Term& a, const Term& b) {
  if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
  std::vector<Term> fa, fb;
  Term ha = a, hb = b;
  while (!ha.is_leaf()) {
    fa.push_back(ha.right());
    ha = ha.left();
  }
  while (!hb.is_leaf()) {
    fb.push_back(hb.right());
    hb = hb.left();
  }
  // fa holds mu_n, ..., mu_1 already.
  for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i) {
    int c = compare_prime(fa[i], fb[i]);
    if (c) return c;
  }
  if (fa.size() != fb.size()) return fa.size() < fb.size() ? -1 : 1;
  if (ha.letter() != hb.letter()) return ha.letter() < hb.letter() ? -1 : 1;
  return 0;
}

// All terms with exactly n leaves.
inline std::vector<Term> all_terms(const Alphabet& x, int n) {
  if (n == 1) {
    std::vector<Term> out;
    for (Letter a = 0; a < x.size(); ++a) out.push_back(Term::leaf(x, a));
    return out;
  }
  std::vector<Term> out;
  for (int k = 1; k < n; ++k)
    for (auto& l : all_terms(x, k))
      for (auto& r : all_terms(x, n - k)) out.push_back(Term::node(l, r));
  return out;
}

using Sparse = std::map<Word, FieldElement>;

inline void add_to(Sparse& s, const Word& w, const FieldElement& c) {
  auto [it, fresh] = s.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  } else if (c.is_zero()) {
    s.erase(it);
  }
}

inline int parity_of(const Alphabet& x, const Word& w, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  int p = 0;
  for (std::size_t i = from; i < std::min(to, w.size()); ++i) p ^= x.parity(w[i]);
  return p;
}

// (u v) by peeling the last letter of v: (u (v' b)) = ((u v') b) - (-1)^{|v'||b|} ((u b) v').
inline Sparse product_words(const Alphabet& x, const Field& f, const Word& u, const Word& v) {
  Sparse out;
  if (v.size() == 1) {
    Word w = u;
    w.push_back(v[0]);
    out.emplace(w, f.one());
    return out;
  }
  Word vp(v.begin(), v.end() - 1);
  Letter b = v.back();
  for (auto& [w, c] : product_words(x, f, u, vp)) {
    Word z = w;
    z.push_back(b);
    add_to(out, z, c);
  }
  Word ub = u;
  ub.push_back(b);
  FieldElement s = (parity_of(x, vp) & x.parity(b)) ? f.one() : -f.one();
  for (auto& [w, c] : product_words(x, f, ub, vp)) add_to(out, w, s * c);
  return out;
}

inline LbPolynomial to_poly(const Alphabet& x, const Field& f, const Sparse& s) {
  std::vector<LbPolynomial::Entry> e;
  for (auto& [w, c] : s) e.emplace_back(x.monomial(w), c);
  return LbPolynomial::from_terms(f, std::move(e));
}

inline LbPolynomial recursive_product(const Alphabet& x, const Field& f, const Monomial& mu, const Monomial& nu) {
  return to_poly(x, f, product_words(x, f, mu.word, nu.word));
}

// Node(mu, nu) rewritten modulo the Leibniz relations in kX**; the remainder is on left-normed terms.
inline LbPolynomial na_rewrite_product(const Alphabet& x, const Field& f, const Monomial& mu, const Monomial& nu,
                                       const std::vector<NAPolynomial>& leibniz) {
  Term t = Term::node(left_normed(x, mu.word), left_normed(x, nu.word));
  auto r = na_reduce(NAPolynomial(f, t, f.one()), leibniz);
  std::vector<LbPolynomial::Entry> e;
  for (auto& [term, c] : r.remainder.terms()) {
    Word w = left_normed_word(term);
    if (w.empty()) throw std::logic_error("non-left-normed remainder");
    e.emplace_back(x.monomial(w), c);
  }
  return LbPolynomial::from_terms(f, std::move(e));
}

// Row echelon over a map-based sparse representation; returns the rank.
class Rank {
 public:
  explicit Rank(Field f) : f_(f) {}
  bool insert(Sparse r) {
    while (!r.empty()) {
      auto lead = r.rbegin()->first;
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        FieldElement inv = r.rbegin()->second.inverse();
        for (auto& [w, c] : r) c *= inv;
        rows_.emplace(lead, std::move(r));
        return true;
      }
      FieldElement c = r.rbegin()->second;
      for (auto& [w, v] : it->second) add_to(r, w, -(c * v));
    }
    return false;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  Field f_;
  std::map<Word, Sparse> rows_;
};

inline Sparse sparse(const LbPolynomial& p) {
  Sparse s;
  for (auto& [m, c] : p.terms()) s.emplace(m.word, c);
  return s;
}

// Degree-n piece of Id(S) as the closure of S under left and right products by letters.
inline std::size_t closure_quotient_dimension(const RelationSet& s, int n) {
  const Alphabet& x = s.alphabet();
  const Field& f = s.field();
  std::vector<std::vector<LbPolynomial>> layer(n + 1);
  for (auto& r : s.relations())
    if (static_cast<int>(r.degree()) <= n) layer[r.degree()].push_back(r);
  for (int d = 1; d < n; ++d) {
    Rank basis(f);
    std::vector<LbPolynomial> kept;
    for (auto& p : layer[d])
      if (basis.insert(sparse(p))) kept.push_back(p);
    layer[d] = kept;
    for (auto& p : kept)
      for (Letter a = 0; a < x.size(); ++a) {
        int e = d + x.degree(a);
        if (e > n) continue;
        LbPolynomial l(f, x.letter(a));
        layer[e].push_back(multiply(p, l, x));
        layer[e].push_back(multiply(l, p, x));
      }
  }
  Rank top(f);
  for (auto& p : layer[n]) top.insert(sparse(p));
  std::size_t total = words_of_degree(x, n).size();
  return total - top.rank();
}

inline Monomial random_word(std::mt19937_64& rng, const Alphabet& x, int length) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(x.size()) - 1);
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(static_cast<Letter>(pick(rng)));
  return x.monomial(w);
}

inline FieldElement random_coefficient(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  while (true) {
    FieldElement c = f.is_rational() ? f.from_rational(Rational(num(rng), den(rng))) : f.from_int(num(rng));
    if (!c.is_zero()) return c;
  }
}

// Random parity-homogeneous polynomial of the given length with up to `terms` monomials.
inline LbPolynomial random_poly(std::mt19937_64& rng, const Alphabet& x, const Field& f, int length, int terms) {
  Monomial first = random_word(rng, x, length);
  std::vector<LbPolynomial::Entry> e{{first, random_coefficient(rng, f)}};
  for (int tries = 0; static_cast<int>(e.size()) < terms && tries < 20 * terms; ++tries) {
    Monomial m = random_word(rng, x, length);
    if (m.parity == first.parity) e.emplace_back(m, random_coefficient(rng, f));
  }
  return LbPolynomial::from_terms(f, std::move(e));
}

inline Alphabet alphabet(std::initializer_list<std::pair<const char*, int>> gens) {
  Alphabet x;
  for (auto& [n, p] : gens) x.add({n, p, 1});
  return x;
}

inline std::vector<std::string> relation_strings(const RelationSet& s) {
  std::vector<std::string> out;
  for (auto& r : s.relations()) out.push_back(to_string(r, s.alphabet()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
