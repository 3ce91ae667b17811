#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "scalars.hpp"
#include "terms.hpp"

namespace lbgsb {

// Element of Lbs(X) on the NF(X) basis, sorted descending by deg-length-lex.
class LbPolynomial {
 public:
  using Entry = std::pair<Monomial, FieldElement>;

  LbPolynomial() = default;
  explicit LbPolynomial(Field f) : field_(f) {}
  LbPolynomial(Field f, const Monomial& m, FieldElement c) : field_(f) {
    if (!c.is_zero()) terms_.emplace_back(m, std::move(c));
  }
  LbPolynomial(Field f, const Monomial& m) : LbPolynomial(f, m, f.one()) {}

  static LbPolynomial from_terms(Field f, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first > b.first; });
    LbPolynomial p(f);
    for (auto& e : entries) {
      if (!p.terms_.empty() && p.terms_.back().first == e.first) {
        p.terms_.back().second += e.second;
        if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
      } else if (!e.second.is_zero()) {
        p.terms_.push_back(std::move(e));
      }
    }
    return p;
  }

  // Takes entries already sorted descending with distinct nonzero terms.
  static LbPolynomial from_sorted(Field f, std::vector<Entry> entries) {
    LbPolynomial p(f);
    p.terms_ = std::move(entries);
    return p;
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Entry>& terms() const { return terms_; }

  // Leading monomial; the empty monomial stands for the zero answer.
  Monomial leading() const { return terms_.empty() ? Monomial{} : terms_.front().first; }
  FieldElement leading_coefficient() const {
    return terms_.empty() ? field_.zero() : terms_.front().second;
  }
  std::uint32_t degree() const { return terms_.empty() ? 0 : terms_.front().first.degree; }
  std::size_t length() const { return terms_.empty() ? 0 : terms_.front().first.length(); }

  FieldElement coefficient(const Monomial& m) const {
    for (auto& [t, c] : terms_)
      if (t == m) return c;
    return field_.zero();
  }

  // Common parity, or nothing when parities are mixed. Zero is even.
  std::optional<int> homogeneous_parity() const {
    if (terms_.empty()) return 0;
    int p = terms_.front().first.parity;
    for (auto& [t, c] : terms_)
      if (t.parity != p) return std::nullopt;
    return p;
  }

  bool is_degree_homogeneous() const {
    for (auto& [t, c] : terms_)
      if (t.degree != degree()) return false;
    return true;
  }

  LbPolynomial scaled(const FieldElement& c) const {
    LbPolynomial p(field_);
    if (c.is_zero()) return p;
    p.terms_.reserve(terms_.size());
    for (auto& [t, v] : terms_) p.terms_.emplace_back(t, v * c);
    return p;
  }

  LbPolynomial monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coefficient().inverse());
  }

  // [f w]_L: right-normed appending of a word to every monomial.
  LbPolynomial append(const Monomial& w) const {
    if (w.empty()) return *this;
    LbPolynomial p(field_);
    p.terms_.reserve(terms_.size());
    for (auto& [t, v] : terms_) p.terms_.emplace_back(concat(t, w), v);
    // Appending the same word keeps lexicographic order except across degree
    // and length classes, which stay intact too.
    return p;
  }

  // a + c * b
  static LbPolynomial combine(const LbPolynomial& a, const LbPolynomial& b, const FieldElement& c) {
    if (!(a.field_ == b.field_)) throw FieldError("field mismatch in polynomial arithmetic");
    LbPolynomial p(a.field_);
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      std::strong_ordering o = std::strong_ordering::equal;
      if (i == a.terms_.size())
        o = std::strong_ordering::less;
      else if (j == b.terms_.size())
        o = std::strong_ordering::greater;
      else
        o = a.terms_[i].first <=> b.terms_[j].first;
      if (o > 0) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (o < 0) {
        FieldElement v = b.terms_[j].second * c;
        if (!v.is_zero()) p.terms_.emplace_back(b.terms_[j].first, std::move(v));
        ++j;
      } else {
        FieldElement v = a.terms_[i].second + b.terms_[j].second * c;
        if (!v.is_zero()) p.terms_.emplace_back(a.terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return p;
  }

  friend LbPolynomial operator+(const LbPolynomial& a, const LbPolynomial& b) {
    return combine(a, b, b.field_.one());
  }
  friend LbPolynomial operator-(const LbPolynomial& a, const LbPolynomial& b) {
    return combine(a, b, -b.field_.one());
  }
  friend LbPolynomial operator*(const FieldElement& c, const LbPolynomial& a) { return a.scaled(c); }

  friend bool operator==(const LbPolynomial& a, const LbPolynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second))
        return false;
    return true;
  }

 private:
  Field field_;
  std::vector<Entry> terms_;
};

// Right-multiplication expansion: (g [b1 ... bn]_L) = sum_w c_w [g w]_L where
// each w permutes b1..bn. The coefficients depend only on the parity pattern
// of (b1, ..., bn), so the table is shared across alphabets and fields.
class ExpansionTable {
 public:
  using Perm = boost::container::small_vector<std::uint8_t, 12>;
  using Expansion = std::vector<std::pair<int, Perm>>;

  static ExpansionTable& instance() {
    static ExpansionTable t;
    return t;
  }

  std::shared_ptr<const Expansion> get(const Word& w, const Alphabet& x) {
    if (w.size() > 60) throw std::length_error("word too long for the expansion table");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (x.parity(w[i])) bits |= std::uint64_t{1} << i;
    return get(w.size(), bits);
  }

  std::shared_ptr<const Expansion> get(std::size_t n, std::uint64_t bits) {
    Key key{n, bits};
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    auto e = std::make_shared<Expansion>();
    if (n == 1) {
      e->push_back({1, Perm{0}});
    } else {
      std::uint64_t prefix = bits & ~(std::uint64_t{1} << (n - 1));
      auto sub = get(n - 1, prefix);
      int last = static_cast<int>((bits >> (n - 1)) & 1);
      int rest = __builtin_popcountll(prefix) & 1;
      int sign = (last & rest) ? 1 : -1;
      auto idx = static_cast<std::uint8_t>(n - 1);
      e->reserve(2 * sub->size());
      for (auto& [c, p] : *sub) {
        Perm q = p;
        q.push_back(idx);
        e->push_back({c, std::move(q)});
      }
      for (auto& [c, p] : *sub) {
        Perm q{idx};
        q.insert(q.end(), p.begin(), p.end());
        e->push_back({sign * c, std::move(q)});
      }
    }
    std::unique_lock lock(mu_);
    return memo_.emplace(key, std::move(e)).first->second;
  }

 private:
  struct Key {
    std::size_t n;
    std::uint64_t bits;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.n * 0x9e3779b97f4a7c15ull ^ k.bits; }
  };
  std::shared_mutex mu_;
  std::unordered_map<Key, std::shared_ptr<const Expansion>, KeyHash> memo_;
};

namespace detail {

inline void add_product_terms(std::unordered_map<Word, FieldElement, WordHash>& acc, const Monomial& mu,
                              const Monomial& nu, const FieldElement& scale, const Alphabet& x) {
  auto e = ExpansionTable::instance().get(nu.word, x);
  const Field& f = scale.field();
  for (auto& [c, p] : *e) {
    Word w = mu.word;
    for (auto i : p) w.push_back(nu.word[i]);
    FieldElement v = scale * f.from_int(c);
    auto [it, fresh] = acc.try_emplace(std::move(w), v);
    if (!fresh) it->second += v;
  }
}

inline LbPolynomial collect(std::unordered_map<Word, FieldElement, WordHash>& acc, const Alphabet& x, Field f) {
  std::vector<LbPolynomial::Entry> out;
  out.reserve(acc.size());
  for (auto& [w, v] : acc)
    if (!v.is_zero()) out.emplace_back(x.monomial(w), v);
  return LbPolynomial::from_terms(f, std::move(out));
}

}  // namespace detail

// (mu nu) on the NF(X) basis.
inline LbPolynomial lb_product(const Monomial& mu, const Monomial& nu, const Alphabet& x, Field f) {
  if (mu.empty() || nu.empty()) return LbPolynomial(f);
  if (nu.length() == 1) return LbPolynomial(f, concat(mu, nu));
  std::unordered_map<Word, FieldElement, WordHash> acc;
  detail::add_product_terms(acc, mu, nu, f.one(), x);
  return detail::collect(acc, x, f);
}

// Bilinear product of polynomials.
inline LbPolynomial multiply(const LbPolynomial& f, const LbPolynomial& g, const Alphabet& x) {
  if (!(f.field() == g.field())) throw FieldError("field mismatch in multiply");
  std::unordered_map<Word, FieldElement, WordHash> acc;
  for (auto& [nu, b] : g.terms())
    for (auto& [mu, a] : f.terms()) detail::add_product_terms(acc, mu, nu, a * b, x);
  return detail::collect(acc, x, f.field());
}

inline LbPolynomial multiply(const Monomial& mu, const LbPolynomial& g, const Alphabet& x) {
  return multiply(LbPolynomial(g.field(), mu), g, x);
}

inline LbPolynomial multiply(const LbPolynomial& f, const Monomial& nu, const Alphabet& x) {
  return multiply(f, LbPolynomial(f.field(), nu), x);
}

inline std::string to_string(const LbPolynomial& p, const Alphabet& x) {
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

}  // namespace lbgsb
