#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scalars.hpp"

namespace lbgsb {

// Sparse row echelon form keyed by basis elements. Rows are kept with their
// largest key (under Greater) as pivot, normalized to 1. An optional
// combination records how each stored row was built from inserted tags.
template <class Key, class Greater, class Hash>
class Echelon {
 public:
  using Row = std::vector<std::pair<Key, FieldElement>>;
  using Combination = std::vector<std::pair<std::size_t, FieldElement>>;

  explicit Echelon(Field f, bool track = false) : field_(f), track_(track) {}

  std::size_t rank() const { return pivots_.size(); }

  // Residual of r after elimination, with the combination of inserted rows
  // subtracted (residual = r - sum c_i row_i).
  std::pair<Row, Combination> reduce(const Row& r) const {
    Acc acc;
    for (const auto& [k, v] : r)
      if (!v.is_zero()) add_to(acc, k, v);
    std::map<std::size_t, FieldElement> used;
    Row out;
    while (!acc.empty()) {
      auto it = acc.begin();
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        out.push_back(*it);
        acc.erase(it);
        continue;
      }
      FieldElement c = it->second;
      for (const auto& [k, v] : p->second.row) add_to(acc, k, -(c * v));
      if (track_)
        for (const auto& [t, v] : p->second.combo) add_to(used, t, c * v);
    }
    Combination combo;
    for (auto& [t, v] : used)
      if (!v.is_zero()) combo.emplace_back(t, v);
    return {out, combo};
  }

  // Inserts a row tagged by `tag`; returns true when the rank grows.
  bool insert(const Row& r, std::size_t tag = 0) {
    auto [res, used] = reduce(r);
    if (res.empty()) return false;
    FieldElement inv = res.front().second.inverse();
    Stored s;
    for (auto& [k, v] : res) s.row.emplace_back(k, v * inv);
    if (track_) {
      // res = r - sum used; stored = inv * res.
      s.combo.emplace_back(tag, inv);
      for (auto& [t, v] : used) s.combo.emplace_back(t, -(v * inv));
    }
    Key lead = res.front().first;
    pivots_.emplace(std::move(lead), std::move(s));
    return true;
  }

  bool contains(const Row& r) const { return reduce(r).first.empty(); }

 private:
  using Acc = std::map<Key, FieldElement, Greater>;

  template <class M, class K>
  static void add_to(M& m, const K& k, const FieldElement& v) {
    auto [it, fresh] = m.try_emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) m.erase(it);
    }
  }

  struct Stored {
    Row row;
    Combination combo;
  };

  Field field_;
  bool track_;
  std::unordered_map<Key, Stored, Hash> pivots_;
};

// Dense matrix over a field with rank and affine solving.
class DenseMatrix {
 public:
  DenseMatrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  FieldElement& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FieldElement& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::size_t rank() const {
    DenseMatrix m = *this;
    return m.eliminate().size();
  }

  // Solves A x = b. Returns a particular solution and a kernel basis, or
  // nothing when inconsistent.
  std::optional<std::pair<std::vector<FieldElement>, std::vector<std::vector<FieldElement>>>>
  solve(const std::vector<FieldElement>& b) const {
    DenseMatrix m(field_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
      m.at(i, cols_) = b[i];
    }
    auto piv = m.eliminate();
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (piv[r] == cols_) return std::nullopt;
    std::vector<FieldElement> x(cols_, field_.zero());
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t r = 0; r < piv.size(); ++r) {
      is_pivot[piv[r]] = true;
      x[piv[r]] = m.at(r, cols_);
    }
    std::vector<std::vector<FieldElement>> kernel;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_pivot[j]) continue;
      std::vector<FieldElement> k(cols_, field_.zero());
      k[j] = field_.one();
      for (std::size_t r = 0; r < piv.size(); ++r) k[piv[r]] = -m.at(r, j);
      kernel.push_back(std::move(k));
    }
    return std::make_pair(std::move(x), std::move(kernel));
  }

 private:
  // Reduced row echelon form in place; returns pivot columns by row.
  std::vector<std::size_t> eliminate() {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t s = r;
      while (s < rows_ && at(s, c).is_zero()) ++s;
      if (s == rows_) continue;
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(s, j));
      FieldElement inv = at(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || at(i, c).is_zero()) continue;
        FieldElement f = at(i, c);
        for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
      }
      piv.push_back(c);
      ++r;
    }
    return piv;
  }

  Field field_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> a_;
};

}  // namespace lbgsb
