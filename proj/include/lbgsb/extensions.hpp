#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsb.hpp"

namespace lbgsb {

struct ExtensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vec = std::vector<FieldElement>;

inline bool is_zero(const Vec& v) {
  for (auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

inline Vec axpy(Vec y, const FieldElement& a, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
  return y;
}

inline Vec operator+(const Vec& a, const Vec& b) { return axpy(a, b.empty() ? FieldElement() : b[0].field().one(), b); }
inline Vec operator-(const Vec& a, const Vec& b) { return axpy(a, -(b.empty() ? FieldElement() : b[0].field().one()), b); }

inline Vec scale(Vec v, const FieldElement& c) {
  for (auto& x : v) x *= c;
  return v;
}

// Finite-dimensional superalgebra given by structure constants.
struct AlgebraTable {
  Field field;
  std::vector<Generator> basis;
  std::vector<std::vector<Vec>> product;

  static AlgebraTable zero(Field f, std::vector<Generator> basis) {
    AlgebraTable t;
    t.field = f;
    t.basis = std::move(basis);
    std::size_t n = t.basis.size();
    t.product.assign(n, std::vector<Vec>(n, Vec(n, f.zero())));
    return t;
  }

  std::size_t dim() const { return basis.size(); }
  int parity(std::size_t i) const { return basis[i].parity; }
  Vec zero_vec() const { return Vec(dim(), field.zero()); }
  Vec unit(std::size_t i) const {
    Vec v = zero_vec();
    v[i] = field.one();
    return v;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec out = zero_vec();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!y[j].is_zero()) out = axpy(out, x[i] * y[j], product[i][j]);
    }
    return out;
  }

  bool is_abelian() const {
    for (auto& row : product)
      for (auto& v : row)
        if (!lbgsb::is_zero(v)) return false;
    return true;
  }

  std::optional<std::size_t> index(const std::string& name) const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (basis[i].name == name) return i;
    return std::nullopt;
  }

  Alphabet alphabet() const {
    Alphabet x;
    for (auto& g : basis) x.add({g.name, g.parity, 1});
    return x;
  }
};

inline std::string to_string(const Vec& v, const std::vector<Generator>& basis) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    bool neg = v[i].is_negative();
    FieldElement a = neg ? -v[i] : v[i];
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (!a.is_one()) out += a.to_string() + "*";
    out += basis[i].name;
    first = false;
  }
  return first ? "0" : out;
}

// Parity of a nonzero vector, or nothing when mixed; zero vectors match anything.
inline std::optional<int> vec_parity(const Vec& v, const std::vector<Generator>& basis) {
  std::optional<int> p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (p && *p != basis[i].parity) return std::nullopt;
    p = basis[i].parity;
  }
  return p;
}

inline bool has_parity(const Vec& v, const std::vector<Generator>& basis, int parity) {
  if (is_zero(v)) return true;
  auto p = vec_parity(v, basis);
  return p && *p == parity;
}

struct Residual {
  std::string witness;
  std::string value;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::size_t evaluated = 0;
  std::vector<Residual> residuals;

  void record(bool ok, const std::string& witness, const std::string& value) {
    ++evaluated;
    if (ok) return;
    passed = false;
    residuals.push_back({witness, value});
  }
};

inline CheckReport check_grading(const AlgebraTable& t, const std::string& name = "grading") {
  CheckReport r;
  r.name = name;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      r.record(has_parity(t.product[i][j], t.basis, t.parity(i) ^ t.parity(j)),
               "(" + t.basis[i].name + " " + t.basis[j].name + ")", to_string(t.product[i][j], t.basis));
  return r;
}

// (x(yz)) - ((xy)z) + (-1)^{|z||y|}((xz)y) on basis triples; `representable`
// restricts the triples of a truncated table.
inline CheckReport check_leibniz_table(
    const AlgebraTable& t, const std::function<bool(std::size_t, std::size_t, std::size_t)>& representable = {}) {
  CheckReport r;
  r.name = "leibniz";
  std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (representable && !representable(i, j, k)) continue;
        Vec x = t.unit(i), y = t.unit(j), z = t.unit(k);
        Vec lhs = t.multiply(x, t.multiply(y, z));
        Vec v = lhs - t.multiply(t.multiply(x, y), z);
        FieldElement s = (t.parity(j) & t.parity(k)) ? -t.field.one() : t.field.one();
        v = axpy(v, s, t.multiply(t.multiply(x, z), y));
        r.record(is_zero(v), "(" + t.basis[i].name + ", " + t.basis[j].name + ", " + t.basis[k].name + ")",
                 to_string(v, t.basis));
      }
  return r;
}

// Generator actions of B on A: left[b][a] = {b.a}, right[a][b] = {a.b}.
struct SupermoduleAction {
  std::vector<std::vector<Vec>> left;
  std::vector<std::vector<Vec>> right;

  static SupermoduleAction zero(const AlgebraTable& a, std::size_t b_gens) {
    SupermoduleAction s;
    s.left.assign(b_gens, std::vector<Vec>(a.dim(), a.zero_vec()));
    s.right.assign(a.dim(), std::vector<Vec>(b_gens, a.zero_vec()));
    return s;
  }
};

inline CheckReport check_action_grading(const AlgebraTable& a, const Alphabet& bx, const SupermoduleAction& act) {
  CheckReport r;
  r.name = "action-grading";
  for (Letter b = 0; b < bx.size(); ++b)
    for (std::size_t i = 0; i < a.dim(); ++i) {
      int p = bx.parity(b) ^ a.parity(i);
      r.record(has_parity(act.left[b][i], a.basis, p), "{" + bx[b].name + "." + a.basis[i].name + "}",
               to_string(act.left[b][i], a.basis));
      r.record(has_parity(act.right[i][b], a.basis, p), "{" + a.basis[i].name + "." + bx[b].name + "}",
               to_string(act.right[i][b], a.basis));
    }
  return r;
}

// Extends generator actions to monomials of Lbs(B) through the supermodule axioms.
class ActionEngine {
 public:
  ActionEngine(const AlgebraTable& a, const Alphabet& bx, const SupermoduleAction& act)
      : a_(a), bx_(bx), act_(act) {}

  const AlgebraTable& algebra() const { return a_; }
  const Alphabet& b_alphabet() const { return bx_; }

  Vec right_letter(const Vec& x, Letter b) const {
    Vec out = a_.zero_vec();
    for (std::size_t i = 0; i < a_.dim(); ++i)
      if (!x[i].is_zero()) out = axpy(out, x[i], act_.right[i][b]);
    return out;
  }

  Vec left_letter(Letter b, const Vec& x) const {
    Vec out = a_.zero_vec();
    for (std::size_t i = 0; i < a_.dim(); ++i)
      if (!x[i].is_zero()) out = axpy(out, x[i], act_.left[b][i]);
    return out;
  }

  // x . nu, folding f.(x y) = (f.x).y - (-1)^{|x||y|}(f.y).x over the word.
  Vec right(const Vec& x, const Monomial& nu) const {
    Vec out = a_.zero_vec();
    auto e = ExpansionTable::instance().get(nu.word, bx_);
    for (auto& [c, p] : *e) {
      Vec y = x;
      for (auto i : p) y = right_letter(y, nu.word[i]);
      out = axpy(out, a_.field.from_int(c), y);
    }
    return out;
  }

  // nu . x, folding (x y).f = x.(y.f) + (-1)^{|f||y|}(x.f).y over the word.
  Vec left(const Monomial& nu, const Vec& x) const {
    Vec out = a_.zero_vec();
    for (std::size_t i = 0; i < a_.dim(); ++i)
      if (!x[i].is_zero()) out = axpy(out, x[i], left_basis(nu.word, nu.word.size(), i));
    return out;
  }

  Vec right(const Vec& x, const LbPolynomial& p) const {
    Vec out = a_.zero_vec();
    for (auto& [m, c] : p.terms()) out = axpy(out, c, right(x, m));
    return out;
  }

  Vec left(const LbPolynomial& p, const Vec& x) const {
    Vec out = a_.zero_vec();
    for (auto& [m, c] : p.terms()) out = axpy(out, c, left(m, x));
    return out;
  }

 private:
  Vec left_basis(const Word& w, std::size_t n, std::size_t a) const {
    Letter b = w[n - 1];
    if (n == 1) return act_.left[b][a];
    Vec inner = act_.left[b][a];
    Vec first = a_.zero_vec();
    for (std::size_t i = 0; i < a_.dim(); ++i)
      if (!inner[i].is_zero()) first = axpy(first, inner[i], left_basis(w, n - 1, i));
    Vec second = right_letter(left_basis(w, n - 1, a), b);
    FieldElement s = (a_.parity(a) & bx_.parity(b)) ? -a_.field.one() : a_.field.one();
    return axpy(first, s, second);
  }

  const AlgebraTable& a_;
  const Alphabet& bx_;
  const SupermoduleAction& act_;
};

// The three supermodule axioms and three compatibility axioms over monomials
// x, y of Lbs(B) with deg(x) + deg(y) <= bound and basis elements f, f' of A.
inline CheckReport check_supermodule(const AlgebraTable& a, const Alphabet& bx, const SupermoduleAction& act,
                                     int bound) {
  CheckReport r;
  r.name = "supermodule";
  ActionEngine eng(a, bx, act);
  const Field& k = a.field;
  auto sgn = [&](int p, int q) { return (p & q) ? -k.one() : k.one(); };
  auto words = words_up_to(bx, std::max(1, bound - 1));
  for (auto& x : words)
    for (auto& y : words) {
      if (static_cast<int>(x.degree + y.degree) > bound) continue;
      LbPolynomial xy = lb_product(x, y, bx, k);
      for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec f = a.unit(i);
        int pf = a.parity(i);
        std::string w = "x=" + to_string(x, bx) + " y=" + to_string(y, bx) + " f=" + a.basis[i].name;
        Vec v1 = eng.right(f, xy) - eng.right(eng.right(f, x), y);
        v1 = axpy(v1, sgn(x.parity, y.parity), eng.right(eng.right(f, y), x));
        r.record(is_zero(v1), "f.(xy) " + w, to_string(v1, a.basis));
        Vec v2 = eng.left(x, eng.left(y, f)) - eng.left(xy, f);
        v2 = axpy(v2, sgn(pf, y.parity), eng.right(eng.left(x, f), y));
        r.record(is_zero(v2), "x.(y.f) " + w, to_string(v2, a.basis));
        Vec v3 = eng.left(x, eng.right(f, y)) - eng.right(eng.left(x, f), y);
        v3 = axpy(v3, sgn(pf, y.parity), eng.left(xy, f));
        r.record(is_zero(v3), "x.(f.y) " + w, to_string(v3, a.basis));
      }
    }
  for (auto& x : words) {
    if (static_cast<int>(x.degree) > bound) continue;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        Vec f = a.unit(i), g = a.unit(j);
        int pf = a.parity(i), pg = a.parity(j);
        std::string w = "x=" + to_string(x, bx) + " f=" + a.basis[i].name + " f'=" + a.basis[j].name;
        Vec v4 = eng.left(x, a.multiply(f, g)) - a.multiply(eng.left(x, f), g);
        v4 = axpy(v4, sgn(pf, pg), a.multiply(eng.left(x, g), f));
        r.record(is_zero(v4), "x.(ff') " + w, to_string(v4, a.basis));
        Vec v5 = a.multiply(f, eng.right(g, x)) - eng.right(a.multiply(f, g), x);
        v5 = axpy(v5, sgn(x.parity, pg), a.multiply(eng.right(f, x), g));
        r.record(is_zero(v5), "f.(f'.x) " + w, to_string(v5, a.basis));
        Vec v6 = a.multiply(f, eng.left(x, g)) - a.multiply(eng.right(f, x), g);
        v6 = axpy(v6, sgn(x.parity, pg), eng.right(a.multiply(f, g), x));
        r.record(is_zero(v6), "f.(x.f') " + w, to_string(v6, a.basis));
      }
  }
  return r;
}

// The supermodule axioms over a finite-dimensional B, products taken in B.
inline CheckReport check_supermodule_table(const AlgebraTable& a, const AlgebraTable& b,
                                           const SupermoduleAction& act) {
  CheckReport r;
  r.name = "supermodule-table";
  Alphabet bx = b.alphabet();
  ActionEngine eng(a, bx, act);
  const Field& k = a.field;
  auto sgn = [&](int p, int q) { return (p & q) ? -k.one() : k.one(); };
  auto right_vec = [&](const Vec& f, const Vec& bv) {
    Vec out = a.zero_vec();
    for (std::size_t t = 0; t < b.dim(); ++t)
      if (!bv[t].is_zero()) out = axpy(out, bv[t], eng.right_letter(f, static_cast<Letter>(t)));
    return out;
  };
  auto left_vec = [&](const Vec& bv, const Vec& f) {
    Vec out = a.zero_vec();
    for (std::size_t t = 0; t < b.dim(); ++t)
      if (!bv[t].is_zero()) out = axpy(out, bv[t], eng.left_letter(static_cast<Letter>(t), f));
    return out;
  };
  for (Letter x = 0; x < b.dim(); ++x)
    for (Letter y = 0; y < b.dim(); ++y) {
      const Vec& xy = b.product[x][y];
      int px = b.parity(x), py = b.parity(y);
      for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec f = a.unit(i);
        int pf = a.parity(i);
        std::string w = "x=" + b.basis[x].name + " y=" + b.basis[y].name + " f=" + a.basis[i].name;
        Vec v1 = right_vec(f, xy) - eng.right_letter(eng.right_letter(f, x), y);
        v1 = axpy(v1, sgn(px, py), eng.right_letter(eng.right_letter(f, y), x));
        r.record(is_zero(v1), "f.(xy) " + w, to_string(v1, a.basis));
        Vec v2 = eng.left_letter(x, eng.left_letter(y, f)) - left_vec(xy, f);
        v2 = axpy(v2, sgn(pf, py), eng.right_letter(eng.left_letter(x, f), y));
        r.record(is_zero(v2), "x.(y.f) " + w, to_string(v2, a.basis));
        Vec v3 = eng.left_letter(x, eng.right_letter(f, y)) - eng.right_letter(eng.left_letter(x, f), y);
        v3 = axpy(v3, sgn(pf, py), left_vec(xy, f));
        r.record(is_zero(v3), "x.(f.y) " + w, to_string(v3, a.basis));
      }
    }
  return r;
}

// R = {[b b'] - {b.b'}} for a table-given B, relations ordered by (b, b').
inline RelationSet table_presentation(const AlgebraTable& b) {
  Alphabet bx = b.alphabet();
  RelationSet r(bx, b.field);
  for (Letter i = 0; i < b.dim(); ++i)
    for (Letter j = 0; j < b.dim(); ++j) {
      std::vector<LbPolynomial::Entry> terms;
      terms.emplace_back(bx.monomial(Word{i, j}), b.field.one());
      for (Letter t = 0; t < b.dim(); ++t)
        if (!b.product[i][j][t].is_zero()) terms.emplace_back(bx.letter(t), -b.product[i][j][t]);
      r.add(LbPolynomial::from_terms(b.field, std::move(terms)));
    }
  return r;
}

inline CheckReport check_factor_parity(const AlgebraTable& a, const RelationSet& r, const std::vector<Vec>& fs) {
  CheckReport rep;
  rep.name = "factor-set-parity";
  if (fs.size() != r.size()) throw ExtensionError("factor set size does not match the relation count");
  for (std::size_t i = 0; i < r.size(); ++i)
    rep.record(has_parity(fs[i], a.basis, *r[i].homogeneous_parity()), "f" + std::to_string(i + 1),
               to_string(fs[i], a.basis));
  return rep;
}

// a.f = {a.|f|} and f.a = {|f|.a} for every basis element a and relation f.
inline CheckReport check_condition_i(const AlgebraTable& a, const SupermoduleAction& act, const RelationSet& r,
                                     const std::vector<Vec>& fs) {
  CheckReport rep;
  rep.name = "condition-i";
  if (fs.size() != r.size()) throw ExtensionError("factor set size does not match the relation count");
  ActionEngine eng(a, r.alphabet(), act);
  for (std::size_t k = 0; k < r.size(); ++k)
    for (std::size_t i = 0; i < a.dim(); ++i) {
      Vec e = a.unit(i);
      std::string w = "a=" + a.basis[i].name + " f=" + to_string(r[k], r.alphabet());
      Vec v1 = eng.right(e, r[k]) - a.multiply(e, fs[k]);
      rep.record(is_zero(v1), "a.f " + w, to_string(v1, a.basis));
      Vec v2 = eng.left(r[k], e) - a.multiply(fs[k], e);
      rep.record(is_zero(v2), "f.a " + w, to_string(v2, a.basis));
    }
  return rep;
}

inline void require_extension_presentation(const RelationSet& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.lead(i).length() <= 1)
      throw ExtensionError("relation with a one-letter lead; run eliminate-units first");
  if (!is_reduced(r)) throw ExtensionError("relation set is not reduced");
}

// mu.|f| = sum a_i {{|s_i|.b}...}, where (mu f) = sum a_i [s_i b ...]_L.
inline CheckReport check_condition_ii(const AlgebraTable& a, const SupermoduleAction& act, const RelationSet& r,
                                      const std::vector<Vec>& fs, int bound) {
  require_extension_presentation(r);
  if (fs.size() != r.size()) throw ExtensionError("factor set size does not match the relation count");
  CheckReport rep;
  rep.name = "condition-ii";
  const Alphabet& bx = r.alphabet();
  ActionEngine eng(a, bx, act);
  auto words = words_up_to(bx, bound);
  for (std::size_t k = 0; k < r.size(); ++k)
    for (auto& mu : words) {
      if (static_cast<int>(mu.degree + r.lead(k).degree) > bound) break;
      LbPolynomial p = multiply(mu, r[k], bx);
      std::vector<TraceEntry> expr;
      try {
        expr = express_normal(p, r);
      } catch (const NotInIdeal&) {
        rep.record(false, "mu=" + to_string(mu, bx) + " f=s" + std::to_string(k + 1), "(mu f) not in Id(R)");
        continue;
      }
      Vec rhs = a.zero_vec();
      for (auto& t : expr) {
        Vec h = fs[t.descriptor.rel];
        for (Letter b : t.descriptor.v.word) h = eng.right_letter(h, b);
        rhs = axpy(rhs, t.coefficient, h);
      }
      Vec v = eng.left(mu, fs[k]) - rhs;
      rep.record(is_zero(v), "mu=" + to_string(mu, bx) + " f=s" + std::to_string(k + 1), to_string(v, a.basis));
    }
  return rep;
}

using TableFactorSet = std::vector<std::vector<Vec>>;

inline std::vector<Vec> flatten(const TableFactorSet& fs) {
  std::vector<Vec> out;
  for (auto& row : fs)
    for (auto& v : row) out.push_back(v);
  return out;
}

inline Vec apply_bilinear(const TableFactorSet& fs, const AlgebraTable& a, const Vec& x, const Vec& y) {
  Vec out = a.zero_vec();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero()) out = axpy(out, x[i] * y[j], fs[i][j]);
  }
  return out;
}

// The six-term cocycle identity on all basis triples (b'', b, b').
inline CheckReport cocycle_check(const AlgebraTable& a, const AlgebraTable& b, const SupermoduleAction& act,
                                 const TableFactorSet& fs) {
  CheckReport rep;
  rep.name = "cocycle";
  Alphabet bx = b.alphabet();
  ActionEngine eng(a, bx, act);
  const Field& k = a.field;
  for (Letter b2 = 0; b2 < b.dim(); ++b2)
    for (Letter b0 = 0; b0 < b.dim(); ++b0)
      for (Letter b1 = 0; b1 < b.dim(); ++b1) {
        FieldElement s = (b.parity(b0) & b.parity(b1)) ? -k.one() : k.one();
        Vec v = eng.right_letter(fs[b2][b0], b1);
        v = axpy(v, -s, eng.right_letter(fs[b2][b1], b0));
        v = axpy(v, -k.one(), eng.left_letter(b2, fs[b0][b1]));
        v = v + apply_bilinear(fs, a, b.product[b2][b0], b.unit(b1));
        v = axpy(v, -s, apply_bilinear(fs, a, b.product[b2][b1], b.unit(b0)));
        v = v - apply_bilinear(fs, a, b.unit(b2), b.product[b0][b1]);
        rep.record(is_zero(v), "(" + b.basis[b2].name + ", " + b.basis[b0].name + ", " + b.basis[b1].name + ")",
                   to_string(v, a.basis));
      }
  return rep;
}

struct ExtensionResult {
  bool built = false;
  std::vector<CheckReport> checks;
  AlgebraTable table;                        // E on A followed by the B-side basis
  std::size_t a_dim = 0;
  std::vector<int> b_degree;                 // per E basis element; 0 on A
  int bound = 0;                             // presentation mode truncation, 0 = exact
  CheckReport audit;
  CheckReport exactness;

  bool checks_passed() const {
    for (auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::vector<const CheckReport*> failed_checks() const {
    std::vector<const CheckReport*> out;
    for (auto& c : checks)
      if (!c.passed) out.push_back(&c);
    return out;
  }
  bool representable(std::size_t i, std::size_t j) const {
    return bound == 0 || b_degree[i] + b_degree[j] <= bound;
  }
};

namespace detail {

inline AlgebraTable table_mode_product(const AlgebraTable& a, const AlgebraTable& b, const SupermoduleAction& act,
                                       const TableFactorSet& fs) {
  std::vector<Generator> basis = a.basis;
  for (auto& g : b.basis) basis.push_back(g);
  AlgebraTable e = AlgebraTable::zero(a.field, basis);
  std::size_t na = a.dim(), nb = b.dim();
  auto put_a = [&](Vec& out, const Vec& v) {
    for (std::size_t t = 0; t < na; ++t) out[t] += v[t];
  };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) put_a(e.product[i][j], a.product[i][j]);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      put_a(e.product[i][na + j], act.right[i][j]);
      put_a(e.product[na + j][i], act.left[j][i]);
    }
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      Vec& out = e.product[na + i][na + j];
      put_a(out, fs[i][j]);
      for (std::size_t t = 0; t < nb; ++t) out[na + t] += b.product[i][j][t];
    }
  return e;
}

inline CheckReport table_exactness(const AlgebraTable& e, std::size_t na, const AlgebraTable& b) {
  CheckReport r;
  r.name = "exactness";
  std::size_t n = e.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& v = e.product[i][j];
      std::string w = "(" + e.basis[i].name + " " + e.basis[j].name + ")";
      r.record(has_parity(v, e.basis, e.parity(i) ^ e.parity(j)), "parity " + w, to_string(v, e.basis));
      bool b_part_ok = true;
      for (std::size_t t = na; t < n; ++t) {
        FieldElement expect = (i >= na && j >= na) ? b.product[i - na][j - na][t - na] : e.field.zero();
        if (!(v[t] == expect)) b_part_ok = false;
      }
      r.record(b_part_ok, "projection " + w, to_string(v, e.basis));
    }
  return r;
}

}  // namespace detail

struct TableExtensionInput {
  AlgebraTable a, b;
  SupermoduleAction action;
  TableFactorSet factor_set;
};

inline std::vector<CheckReport> table_extension_checks(const TableExtensionInput& in, int supermodule_bound = 2) {
  std::vector<CheckReport> checks;
  auto leib_a = check_leibniz_table(in.a);
  leib_a.name = "leibniz-A";
  auto leib_b = check_leibniz_table(in.b);
  leib_b.name = "leibniz-B";
  checks.push_back(check_grading(in.a, "grading-A"));
  checks.push_back(check_grading(in.b, "grading-B"));
  checks.push_back(leib_a);
  checks.push_back(leib_b);
  Alphabet bx = in.b.alphabet();
  checks.push_back(check_action_grading(in.a, bx, in.action));
  RelationSet r = table_presentation(in.b);
  auto flat = flatten(in.factor_set);
  checks.push_back(check_factor_parity(in.a, r, flat));
  checks.push_back(check_supermodule(in.a, bx, in.action, supermodule_bound));
  checks.push_back(check_condition_i(in.a, in.action, r, flat));
  checks.push_back(cocycle_check(in.a, in.b, in.action, in.factor_set));
  return checks;
}

inline ExtensionResult build_extension(const TableExtensionInput& in, int supermodule_bound = 2) {
  if (!(in.a.field == in.b.field)) throw FieldError("A and B over different fields");
  ExtensionResult res;
  res.checks = table_extension_checks(in, supermodule_bound);
  if (!res.checks_passed()) return res;
  res.built = true;
  res.table = detail::table_mode_product(in.a, in.b, in.action, in.factor_set);
  res.a_dim = in.a.dim();
  res.b_degree.assign(in.a.dim(), 0);
  res.b_degree.resize(res.table.dim(), 1);
  res.audit = check_leibniz_table(res.table);
  res.exactness = detail::table_exactness(res.table, in.a.dim(), in.b);
  return res;
}

// Abelian kernel: only the B-supermodule axioms and the cocycle identity.
inline ExtensionResult abelian_extension_build(const TableExtensionInput& in) {
  if (!in.a.is_abelian()) throw ExtensionError("A is not abelian");
  ExtensionResult res;
  auto leib_b = check_leibniz_table(in.b);
  leib_b.name = "leibniz-B";
  res.checks.push_back(check_grading(in.b, "grading-B"));
  res.checks.push_back(leib_b);
  res.checks.push_back(check_action_grading(in.a, in.b.alphabet(), in.action));
  res.checks.push_back(check_factor_parity(in.a, table_presentation(in.b), flatten(in.factor_set)));
  res.checks.push_back(check_supermodule_table(in.a, in.b, in.action));
  res.checks.push_back(cocycle_check(in.a, in.b, in.action, in.factor_set));
  res.table = detail::table_mode_product(in.a, in.b, in.action, in.factor_set);
  res.a_dim = in.a.dim();
  res.b_degree.assign(in.a.dim(), 0);
  res.b_degree.resize(res.table.dim(), 1);
  res.audit = check_leibniz_table(res.table);
  res.exactness = detail::table_exactness(res.table, in.a.dim(), in.b);
  res.built = res.checks_passed();
  return res;
}

struct PresentationExtensionInput {
  AlgebraTable a;
  RelationSet r;
  SupermoduleAction action;
  std::vector<Vec> factor_set;
  int bound = 4;
};

inline std::vector<CheckReport> presentation_extension_checks(const PresentationExtensionInput& in,
                                                              unsigned jobs = 0) {
  require_extension_presentation(in.r);
  std::vector<CheckReport> checks;
  CheckReport gsb;
  gsb.name = "gsb";
  auto rep = gsb_check(in.r, in.bound, jobs);
  for (auto* f : rep.failures())
    gsb.record(false, std::string(kind_name(f->composition.kind)) + " s" + std::to_string(f->composition.f + 1),
               to_string(f->result.remainder, in.r.alphabet()));
  gsb.evaluated = rep.records.size();
  checks.push_back(gsb);
  auto leib_a = check_leibniz_table(in.a);
  leib_a.name = "leibniz-A";
  checks.push_back(check_grading(in.a, "grading-A"));
  checks.push_back(leib_a);
  checks.push_back(check_action_grading(in.a, in.r.alphabet(), in.action));
  checks.push_back(check_factor_parity(in.a, in.r, in.factor_set));
  checks.push_back(check_supermodule(in.a, in.r.alphabet(), in.action, in.bound));
  checks.push_back(check_condition_i(in.a, in.action, in.r, in.factor_set));
  checks.push_back(check_condition_ii(in.a, in.action, in.r, in.factor_set, in.bound));
  return checks;
}

// E on A followed by Irr(R) up to the bound; products of B-side elements whose
// degrees sum past the bound are left unrepresented.
inline ExtensionResult build_extension(const PresentationExtensionInput& in, unsigned jobs = 0) {
  if (!(in.a.field == in.r.field())) throw FieldError("A and R over different fields");
  ExtensionResult res;
  res.checks = presentation_extension_checks(in, jobs);
  if (!res.checks_passed()) return res;
  res.built = true;
  res.bound = in.bound;
  const Alphabet& bx = in.r.alphabet();
  auto irr = irr_enumerate(in.r, in.bound);
  std::vector<Generator> basis = in.a.basis;
  std::unordered_map<Word, std::size_t, WordHash> pos;
  for (auto& m : irr) {
    std::string name;
    if (m.length() == 1) {
      name = bx[m.word[0]].name;
    } else {
      name = to_string(m, bx);
    }
    pos[m.word] = basis.size();
    basis.push_back({name, m.parity, static_cast<int>(m.degree)});
  }
  std::size_t na = in.a.dim();
  AlgebraTable e = AlgebraTable::zero(in.a.field, basis);
  res.a_dim = na;
  res.b_degree.assign(na, 0);
  for (auto& m : irr) res.b_degree.push_back(static_cast<int>(m.degree));
  ActionEngine eng(in.a, bx, in.action);
  auto put_a = [&](Vec& out, const Vec& v) {
    for (std::size_t t = 0; t < na; ++t) out[t] += v[t];
  };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) put_a(e.product[i][j], in.a.product[i][j]);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < irr.size(); ++j) {
      put_a(e.product[i][na + j], eng.right(in.a.unit(i), irr[j]));
      put_a(e.product[na + j][i], eng.left(irr[j], in.a.unit(i)));
    }
  CheckReport exact;
  exact.name = "exactness";
  for (std::size_t i = 0; i < irr.size(); ++i)
    for (std::size_t j = 0; j < irr.size(); ++j) {
      if (static_cast<int>(irr[i].degree + irr[j].degree) > in.bound) continue;
      auto red = reduce(lb_product(irr[i], irr[j], bx, in.a.field), in.r);
      Vec& out = e.product[na + i][na + j];
      for (auto& t : red.trace) {
        Vec h = in.factor_set[t.descriptor.rel];
        for (Letter b : t.descriptor.v.word) h = eng.right_letter(h, b);
        put_a(out, scale(h, t.coefficient));
      }
      for (auto& [m, c] : red.remainder.terms()) out[pos.at(m.word)] += c;
      auto nf = reduce(lb_product(irr[i], irr[j], bx, in.a.field), in.r).remainder;
      bool ok = true;
      for (std::size_t t = 0; t < irr.size(); ++t)
        if (!(out[na + t] == nf.coefficient(irr[t]))) ok = false;
      exact.record(ok, "projection (" + basis[na + i].name + " " + basis[na + j].name + ")", to_string(out, basis));
    }
  for (std::size_t i = 0; i < e.dim(); ++i)
    for (std::size_t j = 0; j < e.dim(); ++j) {
      if (!res.representable(i, j)) continue;
      const Vec& v = e.product[i][j];
      std::string w = "(" + basis[i].name + " " + basis[j].name + ")";
      exact.record(has_parity(v, basis, e.parity(i) ^ e.parity(j)), "parity " + w, to_string(v, basis));
      if (i < na || j < na) {
        bool in_a = true;
        for (std::size_t t = na; t < e.dim(); ++t)
          if (!v[t].is_zero()) in_a = false;
        exact.record(in_a, "ideal " + w, to_string(v, basis));
      }
    }
  res.table = std::move(e);
  res.exactness = exact;
  res.audit = check_leibniz_table(res.table, [&](std::size_t i, std::size_t j, std::size_t k) {
    return res.b_degree[i] + res.b_degree[j] + res.b_degree[k] <= in.bound;
  });
  return res;
}

}  // namespace lbgsb
