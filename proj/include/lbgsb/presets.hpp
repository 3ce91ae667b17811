#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gsb.hpp"

namespace lbgsb {

enum class PresetFamily {
  MetabelianLeibnizT,
  MetabelianLeibnizS,
  MetabelianLeibnizS1,
  MetabelianLeibnizSprime,
  MetabelianLieT,
  MetabelianLieS,
  FreeLeibnizCheck,
};

struct PresetSpec {
  PresetFamily family;
  Alphabet alphabet;
  Field field;
  int degree_bound = 7;
};

inline const std::vector<std::pair<std::string, PresetFamily>>& preset_names() {
  static const std::vector<std::pair<std::string, PresetFamily>> names = {
      {"metabelian-leibniz-T", PresetFamily::MetabelianLeibnizT},
      {"metabelian-leibniz-S", PresetFamily::MetabelianLeibnizS},
      {"metabelian-leibniz-S1", PresetFamily::MetabelianLeibnizS1},
      {"metabelian-leibniz-Sprime", PresetFamily::MetabelianLeibnizSprime},
      {"metabelian-lie-T", PresetFamily::MetabelianLieT},
      {"metabelian-lie-S", PresetFamily::MetabelianLieS},
      {"free-leibniz-check", PresetFamily::FreeLeibnizCheck},
  };
  return names;
}

inline PresetFamily parse_preset_family(const std::string& name) {
  for (auto& [n, f] : preset_names())
    if (n == name) return f;
  throw std::invalid_argument("unknown preset family '" + name + "'");
}

inline std::string preset_name(PresetFamily f) {
  for (auto& [n, g] : preset_names())
    if (g == f) return n;
  return "?";
}

inline bool is_lie_family(PresetFamily f) {
  return f == PresetFamily::MetabelianLieT || f == PresetFamily::MetabelianLieS;
}

namespace detail {

class PresetBuilder {
 public:
  PresetBuilder(const Alphabet& x, Field f) : f_(f), out_(x, f) {}

  void add(const LbPolynomial& p) {
    if (p.is_zero()) return;
    LbPolynomial m = p.monic();
    auto& bucket = seen_[m.leading().word];
    for (auto i : bucket)
      if (out_[i] == m) return;
    bucket.push_back(out_.add(m));
  }

  LbPolynomial word(std::initializer_list<const Monomial*> parts) const {
    Monomial m;
    for (auto* p : parts) m = concat(m, *p);
    return LbPolynomial(f_, m);
  }

  RelationSet take() { return std::move(out_); }

 private:
  Field f_;
  RelationSet out_;
  std::unordered_map<Word, std::vector<std::size_t>, WordHash> seen_;
};

inline std::vector<Monomial> words_between(const Alphabet& x, int lo, int hi) {
  std::vector<Monomial> out;
  for (int d = lo; d <= hi; ++d) {
    auto w = words_of_degree(x, d);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

}  // namespace detail

inline RelationSet generate_preset(const PresetSpec& spec) {
  const Alphabet& x = spec.alphabet;
  const Field f = spec.field;
  const int bound = spec.degree_bound;
  for (auto& g : x.generators())
    if (g.degree != 1) throw std::invalid_argument("preset generators must have degree 1");
  if (spec.family == PresetFamily::FreeLeibnizCheck) return RelationSet(x, f);
  if (bound < 4) throw std::invalid_argument("degree bound must be at least 4 for metabelian families");
  if (is_lie_family(spec.family))
    for (auto& g : x.generators())
      if (g.parity != 0) throw std::invalid_argument("metabelian Lie families need even generators");

  detail::PresetBuilder b(x, f);
  auto sign = [&](Letter a, Letter c) { return (x.parity(a) & x.parity(c)) ? -f.one() : f.one(); };
  auto lt = [&](Letter a) { return x.letter(a); };

  switch (spec.family) {
    case PresetFamily::MetabelianLeibnizS:
    case PresetFamily::MetabelianLeibnizS1:
    case PresetFamily::MetabelianLeibnizSprime: {
      bool full = spec.family == PresetFamily::MetabelianLeibnizS;
      bool with_s2 = spec.family == PresetFamily::MetabelianLeibnizSprime;
      for (auto& c : detail::words_between(x, 2, bound - 2))
        for (Letter a1 = 0; a1 < x.size(); ++a1)
          for (Letter a2 = 0; a2 < x.size(); ++a2) {
            Monomial m1 = lt(a1), m2 = lt(a2);
            if (full || a2 < a1)
              b.add(LbPolynomial::combine(b.word({&c, &m1, &m2}), b.word({&c, &m2, &m1}), -sign(a1, a2)));
            if (with_s2 && a1 == a2 && x.parity(a1) == 1) b.add(b.word({&c, &m1, &m1}));
          }
      break;
    }
    case PresetFamily::MetabelianLeibnizT: {
      auto ws = detail::words_between(x, 2, bound - 2);
      for (auto& mu : ws)
        for (auto& nu : ws) {
          if (mu.length() < 2 || nu.length() < 2 || static_cast<int>(mu.degree + nu.degree) > bound) continue;
          b.add(lb_product(mu, nu, x, f));
        }
      break;
    }
    case PresetFamily::MetabelianLieT: {
      auto ws = detail::words_between(x, 1, bound - 1);
      for (auto& mu : ws)
        for (auto& nu : ws) {
          if (static_cast<int>(mu.degree + nu.degree) > bound) continue;
          if (mu.length() >= 2 && nu.length() >= 2) b.add(lb_product(mu, nu, x, f));
          b.add(lb_product(mu, nu, x, f) + lb_product(nu, mu, x, f));
          if (mu == nu) b.add(lb_product(mu, mu, x, f));
        }
      break;
    }
    case PresetFamily::MetabelianLieS: {
      for (auto& mu : detail::words_between(x, 2, bound - 2))
        for (Letter a1 = 0; a1 < x.size(); ++a1)
          for (Letter a2 = 0; a2 < a1; ++a2) {
            Monomial m1 = lt(a1), m2 = lt(a2);
            b.add(b.word({&mu, &m1, &m2}) - b.word({&mu, &m2, &m1}));
          }
      for (Letter c = 0; c < x.size(); ++c)
        for (Letter bb = c + 1; bb < x.size(); ++bb)
          for (Letter a = bb + 1; a < x.size(); ++a) {
            Monomial mc = lt(c), mb = lt(bb), ma = lt(a);
            b.add(b.word({&mb, &ma, &mc}) - b.word({&mc, &ma, &mb}) + b.word({&mc, &mb, &ma}));
          }
      for (Letter a1 = 0; a1 < x.size(); ++a1)
        for (Letter a2 = 0; a2 < a1; ++a2) {
          Monomial m1 = lt(a1), m2 = lt(a2);
          b.add(b.word({&m1, &m2}) + b.word({&m2, &m1}));
        }
      for (Letter d = 0; d < x.size(); ++d) {
        Monomial md = lt(d);
        b.add(b.word({&md, &md}));
      }
      break;
    }
    case PresetFamily::FreeLeibnizCheck:
      break;
  }
  return b.take();
}

// Closed-form bases of the metabelian quotients, positions counted from 1.
inline bool basis_predicate(PresetFamily family, const Monomial& mu, const Alphabet& x, std::uint64_t characteristic) {
  const auto& a = mu.word;
  std::size_t n = a.size();
  if (family == PresetFamily::FreeLeibnizCheck) return true;
  if (is_lie_family(family)) {
    if (n < 2) return true;
    if (!(a[0] < a[1])) return false;
    if (n >= 3 && a[0] > a[2]) return false;
    for (std::size_t j = 3; j < n; ++j)
      if (a[j - 1] > a[j]) return false;
    return true;
  }
  for (std::size_t j = 3; j < n; ++j)
    if (a[j - 1] > a[j]) return false;
  if (characteristic != 2)
    for (std::size_t j = 2; j + 1 < n; ++j)
      if (x.parity(a[j]) == 1 && a[j] == a[j + 1]) return false;
  return true;
}

// The classical form of the metabelian Lie basis: a2 < a1, a2 <= a3 <= ... <= an.
inline bool classical_lie_predicate(const Monomial& mu) {
  const auto& a = mu.word;
  std::size_t n = a.size();
  if (n < 2) return true;
  if (!(a[1] < a[0])) return false;
  if (n >= 3 && a[1] > a[2]) return false;
  for (std::size_t j = 3; j < n; ++j)
    if (a[j - 1] > a[j]) return false;
  return true;
}

}  // namespace lbgsb
