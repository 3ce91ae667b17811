#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

namespace lbgsb {

using Letter = std::uint16_t;
using Word = boost::container::small_vector<Letter, 12>;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos = 0)
      : std::runtime_error(msg), position(pos) {}
  std::size_t position;
};

struct Generator {
  std::string name;
  int parity = 0;
  int degree = 1;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s[0])) return false;
  for (char c : s.substr(1))
    if (!head(c) && !(c >= '0' && c <= '9') && c != '\'') return false;
  return true;
}

struct Monomial;

// Declaration order of the generators is the well order on X.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Generator> gens) {
    for (auto& g : gens) add(g);
  }

  void add(const Generator& g) {
    if (!is_identifier(g.name)) throw ParseError("invalid generator name '" + g.name + "'");
    if (g.parity != 0 && g.parity != 1) throw ParseError("parity must be 0 or 1 for " + g.name);
    if (g.degree < 1) throw ParseError("degree must be positive for " + g.name);
    if (index_.count(g.name)) throw ParseError("duplicate generator '" + g.name + "'");
    if (gens_.size() >= 0xFFFE) throw ParseError("alphabet too large");
    index_[g.name] = static_cast<Letter>(gens_.size());
    gens_.push_back(g);
  }

  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](Letter i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  int parity(Letter i) const { return gens_[i].parity; }
  int degree(Letter i) const { return gens_[i].degree; }

  Letter index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw ParseError("unknown generator '" + std::string(name) + "'");
    return it->second;
  }
  bool contains(std::string_view name) const { return index_.count(std::string(name)) > 0; }

  Monomial monomial(const Word& w) const;
  Monomial letter(Letter a) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    if (a.gens_.size() != b.gens_.size()) return false;
    for (std::size_t i = 0; i < a.gens_.size(); ++i) {
      const auto &x = a.gens_[i], &y = b.gens_[i];
      if (x.name != y.name || x.parity != y.parity || x.degree != y.degree) return false;
    }
    return true;
  }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, Letter> index_;
};

// Left-normed word [a1 ... an]_L with cached degree and parity.
struct Monomial {
  Word word;
  std::uint32_t degree = 0;
  std::uint8_t parity = 0;

  std::size_t length() const { return word.size(); }
  bool empty() const { return word.empty(); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.word == b.word; }

  // deg-length-lex: (deg, length, a1, ..., an) lexicographically.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    if (auto c = a.word.size() <=> b.word.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.word.size(); ++i)
      if (auto c = a.word[i] <=> b.word[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

inline std::strong_ordering monomial_compare(const Monomial& a, const Monomial& b) { return a <=> b; }

struct WordHash {
  std::size_t operator()(const Word& w) const { return boost::hash_range(w.begin(), w.end()); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return WordHash{}(m.word); }
};

inline Monomial Alphabet::monomial(const Word& w) const {
  Monomial m;
  m.word = w;
  for (Letter a : w) {
    if (a >= gens_.size()) throw std::out_of_range("letter outside alphabet");
    m.degree += gens_[a].degree;
    m.parity ^= gens_[a].parity;
  }
  return m;
}

inline Monomial Alphabet::letter(Letter a) const { return monomial(Word{a}); }

inline Monomial concat(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  m.word.insert(m.word.end(), b.word.begin(), b.word.end());
  m.degree += b.degree;
  m.parity ^= b.parity;
  return m;
}

inline Monomial subword(const Alphabet& x, const Monomial& m, std::size_t from, std::size_t to) {
  return x.monomial(Word(m.word.begin() + from, m.word.begin() + to));
}

inline std::string to_string(const Monomial& m, const Alphabet& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.word.size(); ++i) {
    if (i) out += ' ';
    out += x[m.word[i]].name;
  }
  return out + "]";
}

// All words of total degree exactly d, in deg-length-lex order.
inline std::vector<Monomial> words_of_degree(const Alphabet& x, int d) {
  std::vector<std::vector<Monomial>> by(d + 1);
  by[0].push_back(Monomial{});
  for (int k = 1; k <= d; ++k) {
    for (int j = 0; j < k; ++j)
      for (const auto& m : by[j])
        for (Letter a = 0; a < x.size(); ++a)
          if (j + x.degree(a) == k) by[k].push_back(concat(m, x.letter(a)));
    std::sort(by[k].begin(), by[k].end());
  }
  return by[d];
}

// Element of X** or, with the placeholder leaf, a star term.
class Term {
 public:
  static constexpr Letter kStar = 0xFFFF;

  Term() = default;

  static Term leaf(const Alphabet& x, Letter a) {
    auto n = std::make_shared<Node>();
    n->letter = a;
    n->length = 1;
    n->degree = x.degree(a);
    n->parity = x.parity(a);
    n->hash = boost::hash_value(static_cast<std::size_t>(a) + 1);
    return Term(std::move(n));
  }

  static Term star() {
    auto n = std::make_shared<Node>();
    n->letter = kStar;
    n->length = 1;
    n->stars = 1;
    n->hash = 0x9e3779b97f4a7c15ull;
    return Term(std::move(n));
  }

  static Term node(const Term& l, const Term& r) {
    auto n = std::make_shared<Node>();
    n->left = l.n_;
    n->right = r.n_;
    n->length = l.length() + r.length();
    n->degree = l.degree() + r.degree();
    n->parity = l.parity() ^ r.parity();
    n->stars = l.n_->stars + r.n_->stars;
    std::size_t h = 0x51ed27;
    boost::hash_combine(h, l.hash());
    boost::hash_combine(h, r.hash());
    n->hash = h;
    return Term(std::move(n));
  }

  bool valid() const { return n_ != nullptr; }
  bool is_leaf() const { return !n_->left; }
  bool is_star() const { return is_leaf() && n_->letter == kStar; }
  Letter letter() const { return n_->letter; }
  Term left() const { return Term(n_->left); }
  Term right() const { return Term(n_->right); }
  std::uint32_t length() const { return n_->length; }
  std::uint32_t degree() const { return n_->degree; }
  int parity() const { return n_->parity; }
  std::size_t hash() const { return n_->hash; }
  int star_count() const { return n_->stars; }
  const void* identity() const { return n_.get(); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.n_ == b.n_) return true;
    if (a.hash() != b.hash() || a.length() != b.length()) return false;
    if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf() && a.letter() == b.letter();
    return a.left() == b.left() && a.right() == b.right();
  }

 private:
  struct Node {
    Letter letter = 0;
    std::uint32_t length = 0, degree = 0;
    int parity = 0, stars = 0;
    std::size_t hash = 0;
    std::shared_ptr<const Node> left, right;
  };
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

using StarTerm = Term;

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Order <' on X**: compare (l(mu), mu_n, ..., mu_1, a) lexicographically where
// mu = ((...((a mu_1) mu_2)...) mu_n).
inline std::strong_ordering term_order_prime(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return std::strong_ordering::equal;
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (a.is_leaf() && b.is_leaf()) return a.letter() <=> b.letter();
  Term x = a, y = b;
  while (true) {
    if (x.is_leaf() || y.is_leaf()) {
      if (x.is_leaf() && y.is_leaf()) return x.letter() <=> y.letter();
      // A lone head against a remaining factor: lengths already differ.
      return x.length() <=> y.length();
    }
    if (auto c = term_order_prime(x.right(), y.right()); c != 0) return c;
    x = x.left();
    y = y.left();
  }
}

struct TermGreater {
  bool operator()(const Term& a, const Term& b) const { return term_order_prime(a, b) > 0; }
};

inline Term left_normed(const std::vector<Term>& seq) {
  if (seq.empty()) throw std::invalid_argument("left_normed of an empty sequence");
  Term t = seq[0];
  for (std::size_t i = 1; i < seq.size(); ++i) t = Term::node(t, seq[i]);
  return t;
}

inline Term left_normed(const Alphabet& x, const Word& w) {
  std::vector<Term> seq;
  for (Letter a : w) seq.push_back(Term::leaf(x, a));
  return left_normed(seq);
}

inline Term substitute_star(const StarTerm& mu, const Term& f) {
  if (mu.is_star()) return f;
  if (mu.is_leaf() || mu.star_count() == 0) return mu;
  if (mu.left().star_count()) return Term::node(substitute_star(mu.left(), f), mu.right());
  return Term::node(mu.left(), substitute_star(mu.right(), f));
}

// Left-normed word of the term, or empty if the term is not left-normed.
inline Word left_normed_word(const Term& t) {
  Word out;
  Term x = t;
  while (!x.is_leaf()) {
    if (!x.right().is_leaf()) return {};
    out.push_back(x.right().letter());
    x = x.left();
  }
  out.push_back(x.letter());
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::string to_string(const Term& t, const Alphabet& x) {
  if (t.is_star()) return "*";
  if (t.is_leaf()) return x[t.letter()].name;
  return "(" + to_string(t.left(), x) + " " + to_string(t.right(), x) + ")";
}

namespace detail {

class TermReader {
 public:
  TermReader(std::string_view s, const Alphabet& x, bool allow_star)
      : s_(s), x_(x), star_(allow_star) {}

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  std::size_t pos() const { return pos_; }

  Term term() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of term", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Term l = term();
      Term r = term();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return Term::node(l, r);
    }
    if (c == '[') {
      ++pos_;
      std::vector<Term> seq;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("expected ']'", pos_);
        if (s_[pos_] == ']') break;
        seq.push_back(term());
      }
      ++pos_;
      if (seq.empty()) throw ParseError("empty left-normed word", pos_);
      return left_normed(seq);
    }
    if (star_ && (c == '*')) {
      ++pos_;
      return Term::star();
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != '[' && s_[pos_] != ']')
      ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (!is_identifier(name)) throw ParseError("invalid symbol '" + name + "'", start);
    if (!x_.contains(name)) throw ParseError("unknown generator '" + name + "'", start);
    return Term::leaf(x_, x_.index(name));
  }

 private:
  std::string_view s_;
  const Alphabet& x_;
  bool star_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_term(std::string_view text, const Alphabet& x) {
  detail::TermReader r(text, x, false);
  Term t = r.term();
  if (!r.done()) throw ParseError("trailing characters after term", r.pos());
  return t;
}

inline StarTerm parse_star_term(std::string_view text, const Alphabet& x) {
  detail::TermReader r(text, x, true);
  Term t = r.term();
  if (!r.done()) throw ParseError("trailing characters after term", r.pos());
  if (t.star_count() != 1) throw ParseError("a star term needs exactly one placeholder");
  return t;
}

}  // namespace lbgsb
