#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "extensions.hpp"

namespace lbgsb {

// Malformed input with its location.
struct InputError : std::runtime_error {
  InputError(std::string file, std::size_t line, const std::string& msg)
      : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg),
        file(std::move(file)),
        line(line) {}
  std::string file;
  std::size_t line;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

struct Line {
  std::size_t number;
  std::string text;
};

// Nonblank lines with '#' comments removed, grouped by "[section]" headers.
inline std::map<std::string, std::vector<Line>> sections(const std::string& text, const std::string& file,
                                                         const std::vector<std::string>& allowed,
                                                         const std::string& implicit = "") {
  std::map<std::string, std::vector<Line>> out;
  std::string current = implicit;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto hash = raw.find('#');
    std::string_view s = trim(std::string_view(raw).substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[' && s.back() == ']') {
      std::string name(trim(s.substr(1, s.size() - 2)));
      if (std::find(allowed.begin(), allowed.end(), name) != allowed.end()) {
        current = name;
        out[current];
        continue;
      }
      if (name.find(' ') == std::string::npos && !name.empty() && current.empty())
        throw InputError(file, n, "unknown section [" + name + "]");
    }
    if (current.empty()) throw InputError(file, n, "content outside of a section");
    out[current].push_back({n, std::string(s)});
  }
  return out;
}

// Splits "coef*atom +- coef*atom ..." into signed coefficients and atom texts.
inline std::vector<std::pair<FieldElement, std::string>> split_combination(std::string_view s, const Field& f) {
  std::vector<std::pair<FieldElement, std::string>> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (i == s.size()) throw ParseError("empty expression", 0);
  bool first = true;
  while (true) {
    skip();
    if (i == s.size()) break;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", i);
    }
    first = false;
    FieldElement c = f.one();
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw ParseError("malformed coefficient", st);
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      try {
        c = f.parse(s.substr(st, i - st));
      } catch (const FieldError& e) {
        throw ParseError(e.what(), st);
      }
      have_coef = true;
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip();
      }
    }
    if (neg) c = -c;
    std::size_t st = i;
    if (i < s.size() && (s[i] == '[' || s[i] == '(')) {
      int depth = 0;
      for (; i < s.size(); ++i) {
        if (s[i] == '[' || s[i] == '(') ++depth;
        if (s[i] == ']' || s[i] == ')') --depth;
        if (depth == 0) break;
      }
      if (i == s.size()) throw ParseError("unbalanced brackets", st);
      ++i;
    } else {
      while (i < s.size() && ident_char(s[i])) ++i;
    }
    if (i == st) {
      if (!have_coef) throw ParseError("expected a coefficient or a term", st);
      if (!c.is_zero()) throw ParseError("a bare nonzero constant is not an element", st);
      continue;
    }
    out.emplace_back(c, std::string(s.substr(st, i - st)));
  }
  return out;
}

inline LbPolynomial evaluate(const Term& t, const Alphabet& x, const Field& f) {
  if (t.is_leaf()) return LbPolynomial(f, x.letter(t.letter()));
  Word w = left_normed_word(t);
  if (!w.empty()) return LbPolynomial(f, x.monomial(w));
  return multiply(evaluate(t.left(), x, f), evaluate(t.right(), x, f), x);
}

}  // namespace detail

// "coef*[a b c] - (a (b c)) + ...": bracketed terms are multiplied out in Lbs(X).
inline LbPolynomial parse_polynomial(std::string_view text, const Alphabet& x, const Field& f) {
  LbPolynomial out(f);
  for (auto& [c, atom] : detail::split_combination(text, f))
    out = LbPolynomial::combine(out, detail::evaluate(parse_term(atom, x), x, f), c);
  return out;
}

inline Monomial parse_monomial(std::string_view text, const Alphabet& x) {
  Term t = parse_term(text, x);
  Word w = left_normed_word(t);
  if (w.empty()) throw ParseError("expected a left-normed word", 0);
  return x.monomial(w);
}

inline NAPolynomial parse_na_polynomial(std::string_view text, const Alphabet& x, const Field& f) {
  std::vector<NAPolynomial::Entry> entries;
  for (auto& [c, atom] : detail::split_combination(text, f)) entries.emplace_back(parse_term(atom, x), c);
  return NAPolynomial::from_terms(f, std::move(entries));
}

inline Generator parse_generator_line(std::string_view line, bool with_degree = true) {
  std::istringstream in{std::string(line)};
  Generator g;
  if (!(in >> g.name)) throw ParseError("missing generator name", 0);
  std::string tok;
  if (in >> tok) {
    if (tok != "0" && tok != "1") throw ParseError("parity must be 0 or 1", 0);
    g.parity = tok[0] - '0';
    if (in >> tok) {
      if (!with_degree) throw ParseError("unexpected token '" + tok + "'", 0);
      try {
        std::size_t used = 0;
        g.degree = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("degree");
      } catch (const std::exception&) {
        throw ParseError("degree must be a positive integer", 0);
      }
    }
  }
  if (in >> tok) throw ParseError("unexpected token '" + tok + "'", 0);
  return g;
}

namespace detail {

template <class Fn>
auto at_line(const std::string& file, std::size_t line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError&) {
    throw;
  } catch (const ParseError& e) {
    throw InputError(file, line, e.what());
  } catch (const GsbError& e) {
    throw InputError(file, line, e.what());
  } catch (const FieldError& e) {
    throw InputError(file, line, e.what());
  }
}

inline Alphabet alphabet_from_lines(const std::vector<Line>& lines, const std::string& file) {
  Alphabet x;
  for (auto& l : lines) at_line(file, l.number, [&] { x.add(parse_generator_line(l.text)); });
  if (x.empty()) throw InputError(file, 0, "empty alphabet");
  return x;
}

}  // namespace detail

// One "name [parity [degree]]" per line; parity and degree default to 0 and 1.
inline Alphabet parse_alphabet(const std::string& text, const std::string& file = "<alphabet>") {
  auto sec = detail::sections(text, file, {"alphabet"}, "alphabet");
  return detail::alphabet_from_lines(sec["alphabet"], file);
}

// "[alphabet]" and "[relations]" sections; the alphabet may come from elsewhere.
inline RelationSet parse_presentation(const std::string& text, const Field& f, const std::string& file = "<relations>",
                                      const Alphabet* fallback = nullptr) {
  auto sec = detail::sections(text, file, {"alphabet", "relations"});
  Alphabet x;
  if (sec.count("alphabet"))
    x = detail::alphabet_from_lines(sec["alphabet"], file);
  else if (fallback)
    x = *fallback;
  else
    throw InputError(file, 0, "missing [alphabet] section");
  RelationSet r(x, f);
  for (auto& l : sec["relations"])
    detail::at_line(file, l.number, [&] {
      auto p = parse_polynomial(l.text, x, f);
      if (p.is_zero()) throw ParseError("relation is zero", 0);
      r.add(p);
    });
  return r;
}

inline std::vector<NAPolynomial> parse_na_relations(const std::string& text, const Field& f, Alphabet& x,
                                                    const std::string& file = "<relations>") {
  auto sec = detail::sections(text, file, {"alphabet", "relations"});
  if (sec.count("alphabet")) x = detail::alphabet_from_lines(sec["alphabet"], file);
  if (x.empty()) throw InputError(file, 0, "missing [alphabet] section");
  std::vector<NAPolynomial> out;
  for (auto& l : sec["relations"])
    detail::at_line(file, l.number, [&] {
      auto p = parse_na_polynomial(l.text, x, f);
      if (p.is_zero()) throw ParseError("relation is zero", 0);
      out.push_back(p.monic());
    });
  return out;
}

inline std::string format_alphabet(const Alphabet& x) {
  std::string out;
  for (auto& g : x.generators())
    out += g.name + " " + std::to_string(g.parity) + " " + std::to_string(g.degree) + "\n";
  return out;
}

inline std::string format_presentation(const RelationSet& r) {
  std::string out = "[alphabet]\n" + format_alphabet(r.alphabet()) + "\n[relations]\n";
  for (auto& p : r.relations()) out += to_string(p, r.alphabet()) + "\n";
  return out;
}

// A linear combination of named basis elements.
inline Vec parse_vector(std::string_view text, const std::vector<Generator>& basis, const Field& f) {
  Vec v(basis.size(), f.zero());
  for (auto& [c, atom] : detail::split_combination(text, f)) {
    std::size_t k = 0;
    while (k < basis.size() && basis[k].name != atom) ++k;
    if (k == basis.size()) throw ParseError("unknown basis element '" + atom + "'", 0);
    v[k] += c;
  }
  return v;
}

namespace detail {

struct Arrow {
  std::vector<std::string> lhs;
  std::string rhs;
};

inline Arrow split_arrow(std::string_view line) {
  auto at = line.find("->");
  if (at == std::string_view::npos) throw ParseError("expected '->'", 0);
  Arrow a;
  std::istringstream in{std::string(line.substr(0, at))};
  std::string tok;
  while (in >> tok) a.lhs.push_back(tok);
  a.rhs = std::string(trim(line.substr(at + 2)));
  return a;
}

inline std::size_t basis_index(const std::vector<Generator>& basis, const std::string& name) {
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (basis[k].name == name) return k;
  throw ParseError("unknown basis element '" + name + "'", 0);
}

}  // namespace detail

// "[basis]" with "name parity" lines and "[products]" with "a a' -> combination".
inline AlgebraTable parse_algebra_table(const std::string& text, const Field& f, const std::string& file = "<table>") {
  auto sec = detail::sections(text, file, {"basis", "products"});
  std::vector<Generator> basis;
  Alphabet check;
  for (auto& l : sec["basis"])
    detail::at_line(file, l.number, [&] {
      Generator g = parse_generator_line(l.text, false);
      check.add(g);
      basis.push_back(g);
    });
  AlgebraTable t = AlgebraTable::zero(f, basis);
  std::vector<std::vector<bool>> seen(basis.size(), std::vector<bool>(basis.size(), false));
  for (auto& l : sec["products"])
    detail::at_line(file, l.number, [&] {
      auto a = detail::split_arrow(l.text);
      if (a.lhs.size() != 2) throw ParseError("expected two basis elements before '->'", 0);
      std::size_t i = detail::basis_index(basis, a.lhs[0]), j = detail::basis_index(basis, a.lhs[1]);
      if (seen[i][j]) throw ParseError("duplicate product line", 0);
      seen[i][j] = true;
      t.product[i][j] = parse_vector(a.rhs, basis, f);
    });
  return t;
}

// "[left]" lines "b a -> {b.a}" and "[right]" lines "a b -> {a.b}"; omitted entries are 0.
inline SupermoduleAction parse_action(const std::string& text, const AlgebraTable& a, const Alphabet& bx,
                                      const std::string& file = "<action>") {
  auto sec = detail::sections(text, file, {"left", "right"});
  SupermoduleAction act = SupermoduleAction::zero(a, bx.size());
  auto b_index = [&](const std::string& n) {
    if (!bx.contains(n)) throw ParseError("unknown generator of B '" + n + "'", 0);
    return bx.index(n);
  };
  for (auto& l : sec["left"])
    detail::at_line(file, l.number, [&] {
      auto ar = detail::split_arrow(l.text);
      if (ar.lhs.size() != 2) throw ParseError("expected 'b a -> ...'", 0);
      act.left[b_index(ar.lhs[0])][detail::basis_index(a.basis, ar.lhs[1])] = parse_vector(ar.rhs, a.basis, a.field);
    });
  for (auto& l : sec["right"])
    detail::at_line(file, l.number, [&] {
      auto ar = detail::split_arrow(l.text);
      if (ar.lhs.size() != 2) throw ParseError("expected 'a b -> ...'", 0);
      act.right[detail::basis_index(a.basis, ar.lhs[0])][b_index(ar.lhs[1])] = parse_vector(ar.rhs, a.basis, a.field);
    });
  return act;
}

// "k -> element" lines, k counted from 1; omitted relations map to 0.
inline std::vector<Vec> parse_factor_set(const std::string& text, const AlgebraTable& a, std::size_t relations,
                                         const std::string& file = "<factor-set>") {
  auto sec = detail::sections(text, file, {"factors"}, "factors");
  std::vector<Vec> fs(relations, a.zero_vec());
  for (auto& l : sec["factors"])
    detail::at_line(file, l.number, [&] {
      auto ar = detail::split_arrow(l.text);
      std::size_t k = 0;
      try {
        if (ar.lhs.size() != 1) throw std::invalid_argument("index");
        std::size_t used = 0;
        k = std::stoul(ar.lhs[0], &used);
        if (used != ar.lhs[0].size()) throw std::invalid_argument("index");
      } catch (const std::exception&) {
        throw ParseError("expected a relation index before '->'", 0);
      }
      if (k < 1 || k > relations) throw ParseError("relation index out of range", 0);
      fs[k - 1] = parse_vector(ar.rhs, a.basis, a.field);
    });
  return fs;
}

// "b b' -> element" lines; omitted pairs map to 0.
inline TableFactorSet parse_table_factor_set(const std::string& text, const AlgebraTable& a, const AlgebraTable& b,
                                             const std::string& file = "<factor-set>") {
  auto sec = detail::sections(text, file, {"factors"}, "factors");
  TableFactorSet fs(b.dim(), std::vector<Vec>(b.dim(), a.zero_vec()));
  for (auto& l : sec["factors"])
    detail::at_line(file, l.number, [&] {
      auto ar = detail::split_arrow(l.text);
      if (ar.lhs.size() != 2) throw ParseError("expected 'b b' -> ...'", 0);
      fs[detail::basis_index(b.basis, ar.lhs[0])][detail::basis_index(b.basis, ar.lhs[1])] =
          parse_vector(ar.rhs, a.basis, a.field);
    });
  return fs;
}

inline std::string format_algebra_table(const AlgebraTable& t) {
  std::string out = "[basis]\n";
  for (auto& g : t.basis) out += g.name + " " + std::to_string(g.parity) + "\n";
  out += "\n[products]\n";
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      if (!is_zero(t.product[i][j]))
        out += t.basis[i].name + " " + t.basis[j].name + " -> " + to_string(t.product[i][j], t.basis) + "\n";
  return out;
}

}  // namespace lbgsb
