#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lbgsb/lbgsb.hpp"

namespace ext_instances {

using namespace lbgsb;

inline AlgebraTable table(Field f, std::vector<Generator> basis,
                          std::vector<std::tuple<int, int, int, int>> entries) {
  AlgebraTable t = AlgebraTable::zero(f, std::move(basis));
  for (auto [i, j, k, c] : entries) t.product[i][j][k] += f.from_int(c);
  return t;
}

// Small Leibniz superalgebras.
inline std::vector<AlgebraTable> catalog(Field f) {
  std::vector<AlgebraTable> out;
  out.push_back(table(f, {{"e1", 0, 1}}, {}));
  out.push_back(table(f, {{"o1", 1, 1}}, {}));
  out.push_back(table(f, {{"e1", 0, 1}, {"o1", 1, 1}}, {}));
  out.push_back(table(f, {{"x", 0, 1}, {"y", 0, 1}}, {{0, 0, 1, 1}}));
  out.push_back(table(f, {{"x", 0, 1}, {"y", 0, 1}}, {{0, 1, 1, 1}, {1, 0, 1, -1}}));
  out.push_back(table(f, {{"x", 0, 1}, {"t", 1, 1}}, {{1, 1, 0, 1}}));
  out.push_back(table(f, {{"x", 0, 1}, {"y", 0, 1}, {"z", 0, 1}}, {{0, 1, 2, 1}, {1, 0, 2, -1}}));
  out.push_back(table(f, {{"x", 0, 1}, {"y", 0, 1}, {"z", 0, 1}}, {{0, 0, 1, 1}, {1, 0, 2, 1}}));
  out.push_back(table(f, {{"e", 0, 1}, {"h", 0, 1}, {"g", 0, 1}},
                      {{0, 2, 1, 1}, {2, 0, 1, -1}, {1, 0, 0, 2}, {0, 1, 0, -2}, {1, 2, 2, -2}, {2, 1, 2, 2}}));
  out.push_back(table(f, {{"x", 0, 1}, {"t", 1, 1}, {"u", 1, 1}}, {{1, 2, 0, 1}, {2, 1, 0, 1}}));
  return out;
}

// (x(yz)) - ((xy)z) + (-1)^{|y||z|}((xz)y) over all basis triples, concatenated.
inline Vec leibniz_residuals(const AlgebraTable& t) {
  std::size_t n = t.dim();
  const auto& p = t.product;
  Vec out(n * n * n * n, t.field.zero());
  // sum_m c[m] * (e_i e_m) or (e_m e_i), accumulated with a sign.
  auto acc = [&](FieldElement* dst, const Vec& c, std::size_t i, bool left, const FieldElement& s) {
    for (std::size_t m = 0; m < n; ++m) {
      if (c[m].is_zero()) continue;
      const Vec& v = left ? p[i][m] : p[m][i];
      FieldElement f = s * c[m];
      for (std::size_t q = 0; q < n; ++q)
        if (!v[q].is_zero()) dst[q] += f * v[q];
    }
  };
  FieldElement one = t.field.one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        FieldElement* dst = &out[((i * n + j) * n + k) * n];
        acc(dst, p[j][k], i, true, one);
        acc(dst, p[i][j], k, false, -one);
        acc(dst, p[i][k], j, false, (t.parity(j) & t.parity(k)) ? -one : one);
      }
  return out;
}

inline bool graded(const AlgebraTable& t) {
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      for (std::size_t k = 0; k < t.dim(); ++k)
        if (!t.product[i][j][k].is_zero() && t.parity(k) != (t.parity(i) ^ t.parity(j))) return false;
  return true;
}

// E on A then B, assembled directly from the data.
inline AlgebraTable assemble(const TableExtensionInput& in) {
  std::size_t na = in.a.dim(), nb = in.b.dim();
  std::vector<Generator> basis = in.a.basis;
  basis.insert(basis.end(), in.b.basis.begin(), in.b.basis.end());
  AlgebraTable e = AlgebraTable::zero(in.a.field, basis);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) e.product[i][j][k] = in.a.product[i][j][k];
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < na; ++k) {
        e.product[i][na + j][k] = in.action.right[i][j][k];
        e.product[na + j][i][k] = in.action.left[j][i][k];
      }
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < na; ++k) e.product[na + i][na + j][k] = in.factor_set[i][j][k];
      for (std::size_t k = 0; k < nb; ++k) e.product[na + i][na + j][na + k] = in.b.product[i][j][k];
    }
  return e;
}

// Whether E is a Leibniz superalgebra with the right grading, independently of the library checks.
inline bool audit_valid(const TableExtensionInput& in) {
  AlgebraTable e = assemble(in);
  if (!graded(e)) return false;
  for (auto& c : leibniz_residuals(e))
    if (!c.is_zero()) return false;
  return true;
}

inline AlgebraTable change_basis(std::mt19937_64& rng, const AlgebraTable& t) {
  std::size_t n = t.dim();
  const Field& f = t.field;
  std::uniform_int_distribution<int> c(-2, 2);
  while (true) {
    DenseMatrix p(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (t.parity(i) == t.parity(j)) p.at(i, j) = f.from_int(c(rng));
    if (p.rank() != n) continue;
    // New basis element j is sum_i p(i, j) e_i.
    AlgebraTable out = AlgebraTable::zero(f, t.basis);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vec col_a(n), col_b(n);
        for (std::size_t i = 0; i < n; ++i) {
          col_a[i] = p.at(i, a);
          col_b[i] = p.at(i, b);
        }
        Vec prod = t.multiply(col_a, col_b);
        auto sol = p.solve(prod);
        out.product[a][b] = sol->first;
      }
    return out;
  }
}

struct Instance {
  TableExtensionInput input;
  bool expect_valid = false;
};

inline TableFactorSet unflatten(const Vec& u, std::size_t nb, std::size_t na) {
  TableFactorSet fs(nb, std::vector<Vec>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) fs[i][j] = Vec(u.begin() + (i * nb + j) * na, u.begin() + (i * nb + j + 1) * na);
  return fs;
}

// Factor sets making E Leibniz and graded, as particular solution plus kernel; nothing when none exist.
inline std::optional<std::pair<Vec, std::vector<Vec>>> solve_factor_sets(TableExtensionInput in) {
  std::size_t na = in.a.dim(), nb = in.b.dim(), unknowns = nb * nb * na;
  const Field& f = in.a.field;
  auto residual = [&](const Vec& u) {
    in.factor_set = unflatten(u, nb, na);
    Vec r = leibniz_residuals(assemble(in));
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t k = 0; k < na; ++k)
          if (in.a.parity(k) != (in.b.parity(i) ^ in.b.parity(j))) r.push_back(u[(i * nb + j) * na + k]);
    return r;
  };
  Vec zero(unknowns, f.zero());
  Vec r0 = residual(zero);
  DenseMatrix m(f, r0.size(), unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    Vec e = zero;
    e[u] = f.one();
    Vec ru = residual(e);
    for (std::size_t i = 0; i < r0.size(); ++i) m.at(i, u) = ru[i] - r0[i];
  }
  Vec rhs(r0.size());
  for (std::size_t i = 0; i < r0.size(); ++i) rhs[i] = -r0[i];
  return m.solve(rhs);
}

// A random table-mode instance; `valid` picks a factor set from the solution space when one exists.
inline Instance random_instance(std::mt19937_64& rng, Field f, bool valid) {
  auto cat = catalog(f);
  std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
  Instance inst;
  auto& in = inst.input;
  int mode = static_cast<int>(rng() % 3);
  if (mode == 0) {
    in.a = change_basis(rng, cat[pick(rng)]);
    in.b = change_basis(rng, cat[pick(rng)]);
    in.action = SupermoduleAction::zero(in.a, in.b.dim());
  } else {
    in.b = change_basis(rng, cat[pick(rng)]);
    in.a = in.b;
    for (auto& g : in.a.basis) g.name += "_";
    if (mode == 1)
      for (auto& row : in.a.product)
        for (auto& v : row) v = in.a.zero_vec();
    in.action = SupermoduleAction::zero(in.a, in.b.dim());
    for (std::size_t i = 0; i < in.b.dim(); ++i)
      for (std::size_t j = 0; j < in.b.dim(); ++j) {
        in.action.left[i][j] = in.b.product[i][j];
        in.action.right[j][i] = in.b.product[j][i];
      }
  }
  std::size_t na = in.a.dim(), nb = in.b.dim();
  auto sol = solve_factor_sets(in);
  Vec u(nb * nb * na, f.zero());
  std::uniform_int_distribution<int> c(-2, 2);
  if (valid && sol) {
    u = sol->first;
    for (auto& k : sol->second) u = axpy(u, f.from_int(c(rng)), k);
  } else {
    for (auto& x : u) x = f.from_int(c(rng));
    if (rng() % 3 == 0 && mode != 0) {
      std::size_t i = rng() % nb, j = rng() % na;
      in.action.right[j][i] = scale(in.action.right[j][i], -f.one());
      if (is_zero(in.action.right[j][i])) in.action.right[j][i] = in.a.unit(rng() % na);
    }
  }
  in.factor_set = unflatten(u, nb, na);
  inst.expect_valid = audit_valid(in);
  return inst;
}

struct Violation {
  std::string name;
  std::function<bool()> detected;
};

inline std::string first_witness(const CheckReport& r) { return r.residuals.empty() ? "" : r.residuals.front().witness; }

inline std::vector<Violation> violations() {
  Field q = Field::rationals();
  std::vector<Violation> out;
  out.push_back({"non-Leibniz table", [q] {
                   auto t = table(q, {{"a", 0, 1}, {"b", 0, 1}}, {{0, 1, 1, 1}, {1, 0, 1, 1}});
                   auto r = check_leibniz_table(t);
                   // First failing triple in (x, y, z) order from direct evaluation.
                   auto res = leibniz_residuals(t);
                   std::size_t n = t.dim(), first = res.size();
                   for (std::size_t i = 0; i < res.size(); ++i)
                     if (!res[i].is_zero()) {
                       first = i / n;
                       break;
                     }
                   std::string expect = "(" + t.basis[first / (n * n)].name + ", " + t.basis[first / n % n].name +
                                        ", " + t.basis[first % n].name + ")";
                   return !r.passed && first_witness(r) == expect;
                 }});
  out.push_back({"sign-flipped action", [q] {
                   auto b = table(q, {{"x", 0, 1}, {"y", 0, 1}}, {{0, 1, 1, 1}, {1, 0, 1, -1}});
                   AlgebraTable a = b;
                   SupermoduleAction act = SupermoduleAction::zero(a, 2);
                   for (std::size_t i = 0; i < 2; ++i)
                     for (std::size_t j = 0; j < 2; ++j) {
                       act.left[i][j] = b.product[i][j];
                       act.right[j][i] = b.product[j][i];
                     }
                   act.right[1][0] = scale(act.right[1][0], -q.one());
                   auto r = check_supermodule(a, b.alphabet(), act, 2);
                   return !r.passed && !first_witness(r).empty();
                 }});
  out.push_back({"perturbed factor set, condition (i)", [q] {
                   TableExtensionInput in;
                   in.a = table(q, {{"p", 0, 1}, {"r", 0, 1}}, {{0, 1, 1, 1}, {1, 0, 1, -1}});
                   in.b = table(q, {{"b", 0, 1}}, {});
                   in.action = SupermoduleAction::zero(in.a, 1);
                   in.factor_set = {{in.a.unit(0)}};
                   auto res = build_extension(in);
                   const CheckReport* bad = nullptr;
                   for (auto* c : res.failed_checks())
                     if (c->name == "condition-i") bad = c;
                   return !res.built && bad && first_witness(*bad) == "a.f a=r f=[b b]" && !audit_valid(in);
                 }});
  out.push_back({"cocycle violation", [q] {
                   TableExtensionInput in;
                   in.a = table(q, {{"a", 0, 1}}, {});
                   in.b = table(q, {{"x", 0, 1}, {"y", 0, 1}}, {{0, 1, 1, 1}, {1, 0, 1, -1}});
                   in.action = SupermoduleAction::zero(in.a, 2);
                   in.factor_set = TableFactorSet(2, std::vector<Vec>(2, in.a.zero_vec()));
                   in.factor_set[0][1] = in.a.unit(0);
                   auto r = cocycle_check(in.a, in.b, in.action, in.factor_set);
                   if (r.passed) return false;
                   // The witness triple must have a nonzero superidentity residual in E.
                   auto w = first_witness(r);
                   auto e = assemble(in);
                   auto res = leibniz_residuals(e);
                   std::size_t n = e.dim();
                   for (std::size_t i = 1; i < n; ++i)
                     for (std::size_t j = 1; j < n; ++j)
                       for (std::size_t k = 1; k < n; ++k) {
                         std::string name = "(" + e.basis[i].name + ", " + e.basis[j].name + ", " + e.basis[k].name + ")";
                         if (name != w) continue;
                         std::size_t at = ((i * n + j) * n + k) * n;
                         for (std::size_t c = 0; c < n; ++c)
                           if (!res[at + c].is_zero()) return true;
                       }
                   return false;
                 }});
  out.push_back({"condition (ii) at the smallest mu", [q] {
                   auto b = table(q, {{"x", 0, 1}, {"y", 0, 1}}, {{0, 1, 1, 1}, {1, 0, 1, -1}});
                   auto a = table(q, {{"a", 0, 1}}, {});
                   auto r = table_presentation(b);
                   std::vector<Vec> fs(r.size(), a.zero_vec());
                   fs[1] = a.unit(0);
                   auto act = SupermoduleAction::zero(a, 2);
                   act.left[0][0] = a.unit(0);
                   auto rep = check_condition_ii(a, act, r, fs, 4);
                   return !rep.passed && first_witness(rep).rfind("mu=[x] ", 0) == 0;
                 }});
  out.push_back({"non-abelian kernel in the abelian build", [q] {
                   TableExtensionInput in;
                   in.a = table(q, {{"x", 0, 1}, {"y", 0, 1}}, {{0, 0, 1, 1}});
                   in.b = table(q, {{"b", 0, 1}}, {});
                   in.action = SupermoduleAction::zero(in.a, 1);
                   in.factor_set = {{in.a.zero_vec()}};
                   try {
                     abelian_extension_build(in);
                   } catch (const ExtensionError&) {
                     return true;
                   }
                   return false;
                 }});
  out.push_back({"odd factor on an even pair", [q] {
                   TableExtensionInput in;
                   in.a = table(q, {{"t", 1, 1}}, {});
                   in.b = table(q, {{"b", 0, 1}}, {});
                   in.action = SupermoduleAction::zero(in.a, 1);
                   in.factor_set = {{in.a.unit(0)}};
                   auto res = build_extension(in);
                   for (auto* c : res.failed_checks())
                     if (c->name == "factor-set-parity" && first_witness(*c) == "f1") return !res.built;
                   return false;
                 }});
  return out;
}

}  // namespace ext_instances
