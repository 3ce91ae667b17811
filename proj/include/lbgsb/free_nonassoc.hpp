#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "linalg.hpp"
#include "parallel.hpp"
#include "scalars.hpp"
#include "terms.hpp"

namespace lbgsb {

// Element of kX**: terms sorted descending by <', no zero coefficients.
class NAPolynomial {
 public:
  using Entry = std::pair<Term, FieldElement>;

  NAPolynomial() = default;
  explicit NAPolynomial(Field f) : field_(f) {}
  NAPolynomial(Field f, const Term& t, FieldElement c) : field_(f) {
    if (!c.is_zero()) terms_.emplace_back(t, std::move(c));
  }

  static NAPolynomial from_terms(Field f, std::vector<Entry> entries) {
    std::map<Term, FieldElement, TermGreater> acc;
    for (auto& [t, c] : entries) {
      auto [it, fresh] = acc.try_emplace(t, c);
      if (!fresh) it->second += c;
    }
    NAPolynomial p(f);
    for (auto& [t, c] : acc)
      if (!c.is_zero()) p.terms_.emplace_back(t, c);
    return p;
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Entry>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front().first; }
  const FieldElement& leading_coefficient() const { return terms_.front().second; }

  NAPolynomial monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coefficient().inverse());
  }

  NAPolynomial scaled(const FieldElement& c) const {
    NAPolynomial p(field_);
    if (c.is_zero()) return p;
    for (auto& [t, v] : terms_) p.terms_.emplace_back(t, v * c);
    return p;
  }

  friend NAPolynomial operator+(const NAPolynomial& a, const NAPolynomial& b) {
    return combine(a, b, b.field_.one());
  }
  friend NAPolynomial operator-(const NAPolynomial& a, const NAPolynomial& b) {
    return combine(a, b, -b.field_.one());
  }

  friend bool operator==(const NAPolynomial& a, const NAPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  // a + c * b
  static NAPolynomial combine(const NAPolynomial& a, const NAPolynomial& b, const FieldElement& c) {
    if (!(a.field_ == b.field_)) throw FieldError("field mismatch in polynomial arithmetic");
    NAPolynomial p(a.field_);
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      std::strong_ordering o = std::strong_ordering::less;
      if (i == a.terms_.size())
        o = std::strong_ordering::less;
      else if (j == b.terms_.size())
        o = std::strong_ordering::greater;
      else
        o = term_order_prime(a.terms_[i].first, b.terms_[j].first);
      if (o > 0) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (o < 0) {
        FieldElement v = b.terms_[j].second * c;
        if (!v.is_zero()) p.terms_.emplace_back(b.terms_[j].first, v);
        ++j;
      } else {
        FieldElement v = a.terms_[i].second + b.terms_[j].second * c;
        if (!v.is_zero()) p.terms_.emplace_back(a.terms_[i].first, v);
        ++i;
        ++j;
      }
    }
    return p;
  }

 private:
  Field field_;
  std::vector<Entry> terms_;
};

inline NAPolynomial na_multiply(const NAPolynomial& f, const NAPolynomial& g) {
  if (!(f.field() == g.field())) throw FieldError("field mismatch in na_multiply");
  std::vector<NAPolynomial::Entry> out;
  for (auto& [s, a] : f.terms())
    for (auto& [t, b] : g.terms()) out.emplace_back(Term::node(s, t), a * b);
  return NAPolynomial::from_terms(f.field(), std::move(out));
}

inline NAPolynomial substitute_star(const StarTerm& mu, const NAPolynomial& f) {
  std::vector<NAPolynomial::Entry> out;
  for (auto& [t, c] : f.terms()) out.emplace_back(substitute_star(mu, t), c);
  return NAPolynomial::from_terms(f.field(), std::move(out));
}

inline std::string to_string(const NAPolynomial& p, const Alphabet& x) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [t, c] : p.terms()) {
    bool neg = c.is_negative();
    FieldElement a = neg ? -c : c;
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (!a.is_one()) out += a.to_string() + "*";
    out += to_string(t, x);
    first = false;
  }
  return out;
}

// Terms of X** by degree, memoized per alphabet instance.
class TermCatalog {
 public:
  explicit TermCatalog(const Alphabet& x) : x_(x) {}

  const std::vector<Term>& of_degree(int d) {
    while (static_cast<int>(by_.size()) <= d) {
      int k = static_cast<int>(by_.size());
      std::vector<Term> level;
      if (k > 0) {
        for (Letter a = 0; a < x_.size(); ++a)
          if (x_.degree(a) == k) level.push_back(Term::leaf(x_, a));
        for (int i = 1; i < k; ++i)
          for (const auto& l : by_[i])
            for (const auto& r : by_[k - i]) level.push_back(Term::node(l, r));
      }
      std::sort(level.begin(), level.end(), [](const Term& a, const Term& b) {
        return term_order_prime(a, b) < 0;
      });
      by_.push_back(std::move(level));
    }
    return by_[d];
  }

  const std::vector<Term>& of_length(int n) {
    while (static_cast<int>(len_.size()) <= n) {
      int k = static_cast<int>(len_.size());
      std::vector<Term> level;
      if (k == 1)
        for (Letter a = 0; a < x_.size(); ++a) level.push_back(Term::leaf(x_, a));
      for (int i = 1; i < k && k > 1; ++i)
        for (const auto& l : len_[i])
          for (const auto& r : len_[k - i]) level.push_back(Term::node(l, r));
      len_.push_back(std::move(level));
    }
    return len_[n];
  }

  // Number of terms of degree d, saturating at SIZE_MAX.
  std::size_t count_of_degree(int d) const {
    std::vector<std::size_t> c(d + 1, 0);
    for (int k = 1; k <= d; ++k) {
      for (Letter a = 0; a < x_.size(); ++a)
        if (x_.degree(a) == k) ++c[k];
      for (int i = 1; i < k; ++i) {
        if (c[i] && c[k - i] > (SIZE_MAX - c[k]) / c[i]) {
          c[k] = SIZE_MAX;
          break;
        }
        c[k] += c[i] * c[k - i];
      }
    }
    return c[d];
  }

  // Star terms of total degree n whose placeholder stands for degree d.
  std::vector<StarTerm> star_terms(int n, int d) {
    if (n == d) return {Term::star()};
    std::vector<StarTerm> out;
    for (int i = 1; i < n; ++i) {
      if (i >= d)
        for (const auto& l : star_terms(i, d))
          for (const auto& r : of_degree(n - i)) out.push_back(Term::node(l, r));
      if (n - i >= d)
        for (const auto& l : of_degree(i))
          for (const auto& r : star_terms(n - i, d)) out.push_back(Term::node(l, r));
    }
    return out;
  }

 private:
  Alphabet x_;
  std::vector<std::vector<Term>> by_;
  std::vector<std::vector<Term>> len_;
};

// The family (mu(nu tau)) - ((mu nu)tau) + (-1)^{|nu||tau|}((mu tau)nu), all
// mu, nu, tau with total length at most `length_bound`; monic, deduplicated.
inline std::vector<NAPolynomial> leibniz_relations(const Alphabet& x, Field f, int length_bound) {
  TermCatalog cat(x);
  std::vector<NAPolynomial> out;
  std::unordered_map<Term, std::size_t, TermHash> seen;
  for (int n = 3; n <= length_bound; ++n)
    for (int i = 1; i + 2 <= n; ++i)
      for (int j = 1; i + j + 1 <= n; ++j) {
        int k = n - i - j;
        for (const auto& mu : cat.of_length(i))
          for (const auto& nu : cat.of_length(j))
            for (const auto& tau : cat.of_length(k)) {
              FieldElement sign = (nu.parity() & tau.parity()) ? -f.one() : f.one();
              NAPolynomial p = NAPolynomial::from_terms(
                  f, {{Term::node(mu, Term::node(nu, tau)), f.one()},
                      {Term::node(Term::node(mu, nu), tau), -f.one()},
                      {Term::node(Term::node(mu, tau), nu), sign}});
              if (p.is_zero()) continue;
              p = p.monic();
              if (seen.emplace(p.leading(), out.size()).second) out.push_back(std::move(p));
            }
      }
  return out;
}

struct NAComposition {
  std::size_t f = 0, g = 0;
  StarTerm mu;
  NAPolynomial composition;
};

namespace detail {

// Paths to every subterm (false = left, true = right), preorder.
inline void subterm_paths(const Term& t, std::vector<bool>& path,
                          const std::function<void(const Term&, const std::vector<bool>&)>& fn) {
  fn(t, path);
  if (t.is_leaf()) return;
  path.push_back(false);
  subterm_paths(t.left(), path, fn);
  path.back() = true;
  subterm_paths(t.right(), path, fn);
  path.pop_back();
}

inline StarTerm star_at(const Term& t, const std::vector<bool>& path, std::size_t i = 0) {
  if (i == path.size()) return Term::star();
  if (!path[i]) return Term::node(star_at(t.left(), path, i + 1), t.right());
  return Term::node(t.left(), star_at(t.right(), path, i + 1));
}

}  // namespace detail

inline std::vector<NAComposition> na_inclusion_compositions(const std::vector<NAPolynomial>& s) {
  std::unordered_multimap<Term, std::size_t, TermHash> leads;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) leads.emplace(s[i].leading(), i);
  std::vector<NAComposition> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_zero()) continue;
    std::vector<bool> path;
    detail::subterm_paths(s[i].leading(), path, [&](const Term& sub, const std::vector<bool>& p) {
      auto range = leads.equal_range(sub);
      std::vector<std::size_t> gs;
      for (auto it = range.first; it != range.second; ++it) gs.push_back(it->second);
      std::sort(gs.begin(), gs.end());
      for (std::size_t g : gs) {
        if (g == i && p.empty()) continue;
        StarTerm mu = detail::star_at(s[i].leading(), p);
        out.push_back({i, g, mu, s[i] - substitute_star(mu, s[g])});
      }
    });
  }
  return out;
}

struct NAReduction {
  NAPolynomial remainder;
  std::vector<std::pair<FieldElement, std::pair<StarTerm, std::size_t>>> trace;
};

// Cancels leading terms by mu_{* -> s}; the first matching subterm in preorder
// (so the smallest star term at the root first) and the lowest relation index.
inline NAReduction na_reduce(const NAPolynomial& f, const std::vector<NAPolynomial>& s) {
  std::unordered_map<Term, std::size_t, TermHash> leads;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) leads.emplace(s[i].leading(), i);
  NAReduction out;
  std::map<Term, FieldElement, TermGreater> acc;
  for (auto& [t, c] : f.terms()) acc.emplace(t, c);
  std::vector<NAPolynomial::Entry> rem;
  while (!acc.empty()) {
    auto it = acc.begin();
    Term top = it->first;
    FieldElement c = it->second;
    std::vector<bool> path, found;
    std::size_t rel = 0;
    bool hit = false;
    detail::subterm_paths(top, path, [&](const Term& sub, const std::vector<bool>& p) {
      if (hit) return;
      auto l = leads.find(sub);
      if (l != leads.end()) {
        hit = true;
        found = p;
        rel = l->second;
      }
    });
    if (!hit) {
      rem.emplace_back(top, c);
      acc.erase(it);
      continue;
    }
    StarTerm mu = detail::star_at(top, found);
    NAPolynomial h = substitute_star(mu, s[rel]);
    FieldElement k = c / h.leading_coefficient();
    for (auto& [t, v] : h.terms()) {
      auto [jt, fresh] = acc.try_emplace(t, -(k * v));
      if (!fresh) {
        jt->second -= k * v;
        if (jt->second.is_zero()) acc.erase(jt);
      }
    }
    out.trace.push_back({k, {mu, rel}});
  }
  out.remainder = NAPolynomial::from_terms(f.field(), std::move(rem));
  return out;
}

struct NACheckRecord {
  NAComposition composition;
  bool trivial = true;
  NAPolynomial remainder;
};

struct NACheckReport {
  int length_bound = 0;
  bool passed = true;
  std::size_t compositions = 0;
  std::vector<NACheckRecord> failures;
};

inline NACheckReport na_gsb_check(const std::vector<NAPolynomial>& s, int length_bound, unsigned jobs = 0) {
  NACheckReport rep;
  rep.length_bound = length_bound;
  std::vector<NAComposition> comps;
  for (auto& c : na_inclusion_compositions(s))
    if (static_cast<int>(s[c.f].leading().length()) <= length_bound) comps.push_back(std::move(c));
  rep.compositions = comps.size();
  std::vector<NACheckRecord> recs(comps.size());
  parallel_for(comps.size(), jobs, [&](std::size_t i) {
    auto r = na_reduce(comps[i].composition, s);
    recs[i].composition = comps[i];
    recs[i].remainder = r.remainder;
    recs[i].trivial = r.remainder.is_zero();
  });
  for (auto& r : recs)
    if (!r.trivial) {
      rep.passed = false;
      rep.failures.push_back(std::move(r));
    }
  return rep;
}

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension of the degree-n piece of kX**/Id(S) by row reduction.
inline std::size_t na_quotient_dimension(const std::vector<NAPolynomial>& s, const Alphabet& x, Field f,
                                         int degree, std::size_t cap = 400000) {
  for (const auto& p : s)
    for (const auto& [t, c] : p.terms())
      if (t.degree() != p.leading().degree())
        throw std::invalid_argument("relation set is not homogeneous in degree");
  TermCatalog cat(x);
  if (cat.count_of_degree(degree) > cap) throw ResourceError("degree exceeds the configured resource cap");
  const auto& cols = cat.of_degree(degree);
  Echelon<Term, TermGreater, TermHash> ech(f);
  std::map<int, std::vector<StarTerm>> stars;
  for (const auto& p : s) {
    if (p.is_zero()) continue;
    int d = static_cast<int>(p.leading().degree());
    if (d > degree) continue;
    auto it = stars.find(d);
    if (it == stars.end()) it = stars.emplace(d, cat.star_terms(degree, d)).first;
    for (const auto& mu : it->second) {
      NAPolynomial h = substitute_star(mu, p);
      ech.insert(h.terms());
    }
  }
  return cols.size() - ech.rank();
}

}  // namespace lbgsb
