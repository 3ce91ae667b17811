#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "free_nonassoc.hpp"
#include "leibniz.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace lbgsb {

struct GsbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monic, parity-homogeneous relations over a fixed alphabet and field.
class RelationSet {
 public:
  RelationSet() = default;
  RelationSet(Alphabet x, Field f) : x_(std::move(x)), f_(f), unit_(x_.size()) {}
  RelationSet(Alphabet x, Field f, const std::vector<LbPolynomial>& rels) : RelationSet(std::move(x), f) {
    for (const auto& r : rels) add(r);
  }

  // Normalizes to monic form; rejects zero and mixed-parity relations.
  std::size_t add(const LbPolynomial& r) {
    if (!(r.field() == f_)) throw FieldError("relation over the wrong field");
    if (r.is_zero()) throw GsbError("zero relation");
    if (!r.homogeneous_parity()) throw GsbError("relation is not homogeneous in parity");
    rels_.push_back(r.monic());
    std::size_t i = rels_.size() - 1;
    const Monomial& m = rels_.back().terms().front().first;
    leads_[m.word].push_back(i);
    if (m.length() == 1) unit_[m.word[0]].push_back(i);
    return i;
  }

  const Alphabet& alphabet() const { return x_; }
  const Field& field() const { return f_; }
  const std::vector<LbPolynomial>& relations() const { return rels_; }
  std::size_t size() const { return rels_.size(); }
  const LbPolynomial& operator[](std::size_t i) const { return rels_[i]; }
  const Monomial& lead(std::size_t i) const { return rels_[i].terms().front().first; }

  const std::vector<std::size_t>& with_lead(const Word& w) const {
    static const std::vector<std::size_t> none;
    auto it = leads_.find(w);
    return it == leads_.end() ? none : it->second;
  }
  const std::vector<std::size_t>& with_unit_lead(Letter a) const { return unit_[a]; }

  bool is_degree_homogeneous() const {
    return std::all_of(rels_.begin(), rels_.end(), [](const LbPolynomial& p) { return p.is_degree_homogeneous(); });
  }

 private:
  Alphabet x_;
  Field f_;
  std::vector<LbPolynomial> rels_;
  std::unordered_map<Word, std::vector<std::size_t>, WordHash> leads_;
  std::vector<std::vector<std::size_t>> unit_;
};

// [u s v]_L; u is nonempty only for relations with a one-letter lead.
struct Descriptor {
  std::size_t rel = 0;
  Monomial u, v;
  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

inline std::string to_string(const Descriptor& d, const Alphabet& x) {
  std::string out = "[";
  for (Letter a : d.u.word) out += x[a].name + " ";
  out += "s" + std::to_string(d.rel + 1);
  for (Letter a : d.v.word) out += " " + x[a].name;
  return out + "]";
}

inline Monomial descriptor_lead(const Descriptor& d, const RelationSet& s) {
  return concat(concat(d.u, s.lead(d.rel)), d.v);
}

inline LbPolynomial realize(const Descriptor& d, const RelationSet& s) {
  if (d.rel >= s.size()) throw GsbError("descriptor names a missing relation");
  const LbPolynomial& r = s[d.rel];
  if (d.u.empty()) return r.append(d.v);
  if (s.lead(d.rel).length() != 1) throw GsbError("invalid descriptor: left word needs a one-letter lead");
  return multiply(d.u, r, s.alphabet()).append(d.v);
}

struct TraceEntry {
  FieldElement coefficient;
  Descriptor descriptor;
};

struct ReductionResult {
  LbPolynomial remainder;
  std::vector<TraceEntry> trace;
};

constexpr std::size_t kNoExclusion = static_cast<std::size_t>(-1);

// Descriptors d with lead(d) = m: prefixes first (shortest first), then
// one-letter leads at positions t >= 1; lowest relation index within each.
inline std::vector<Descriptor> find_descriptors(const Monomial& m, const RelationSet& s,
                                                std::size_t exclude = kNoExclusion, bool first_only = false) {
  std::vector<Descriptor> out;
  const Alphabet& x = s.alphabet();
  for (std::size_t k = 1; k <= m.length(); ++k) {
    Word pre(m.word.begin(), m.word.begin() + k);
    for (std::size_t r : s.with_lead(pre)) {
      if (r == exclude) continue;
      out.push_back({r, Monomial{}, subword(x, m, k, m.length())});
      if (first_only) return out;
    }
  }
  for (std::size_t t = 1; t < m.length(); ++t)
    for (std::size_t r : s.with_unit_lead(m.word[t])) {
      if (r == exclude) continue;
      out.push_back({r, subword(x, m, 0, t), subword(x, m, t + 1, m.length())});
      if (first_only) return out;
    }
  return out;
}

inline std::optional<Descriptor> find_descriptor(const Monomial& m, const RelationSet& s,
                                                 std::size_t exclude = kNoExclusion) {
  auto all = find_descriptors(m, s, exclude, true);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline bool irr_membership(const Monomial& m, const RelationSet& s, std::size_t exclude = kNoExclusion) {
  for (std::size_t t = 0; t < m.length(); ++t)
    for (std::size_t r : s.with_unit_lead(m.word[t]))
      if (r != exclude) return false;
  for (std::size_t k = 2; k <= m.length(); ++k) {
    Word pre(m.word.begin(), m.word.begin() + k);
    for (std::size_t r : s.with_lead(pre))
      if (r != exclude) return false;
  }
  return true;
}

inline ReductionResult reduce(const LbPolynomial& f, const RelationSet& s, std::size_t exclude = kNoExclusion) {
  if (!(f.field() == s.field())) throw FieldError("field mismatch in reduce");
  ReductionResult out;
  std::map<Monomial, FieldElement, std::greater<>> acc;
  for (auto& [m, c] : f.terms()) acc.emplace(m, c);
  std::vector<LbPolynomial::Entry> rem;
  while (!acc.empty()) {
    auto it = acc.begin();
    auto d = find_descriptor(it->first, s, exclude);
    if (!d) {
      rem.push_back(*it);
      acc.erase(it);
      continue;
    }
    LbPolynomial h = realize(*d, s);
    FieldElement c = it->second / h.leading_coefficient();
    for (auto& [m, v] : h.terms()) {
      auto [jt, fresh] = acc.try_emplace(m, -(c * v));
      if (!fresh) {
        jt->second -= c * v;
        if (jt->second.is_zero()) acc.erase(jt);
      }
    }
    out.trace.push_back({c, *d});
  }
  out.remainder = LbPolynomial::from_sorted(f.field(), std::move(rem));
  return out;
}

// f == remainder + sum c * realize(d).
inline bool reconstructs(const LbPolynomial& f, const ReductionResult& r, const RelationSet& s) {
  LbPolynomial acc = r.remainder;
  for (auto& t : r.trace) acc = LbPolynomial::combine(acc, realize(t.descriptor, s), t.coefficient);
  return acc == f;
}

// Irr monomials up to a degree bound, in deg-length-lex order.
inline std::vector<Monomial> irr_enumerate(const RelationSet& s, int degree_bound) {
  const Alphabet& x = s.alphabet();
  std::vector<Monomial> out;
  std::vector<Monomial> frontier{Monomial{}};
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& m : frontier)
      for (Letter a = 0; a < x.size(); ++a) {
        if (static_cast<int>(m.degree) + x.degree(a) > degree_bound) continue;
        if (!s.with_unit_lead(a).empty()) continue;
        Monomial w = concat(m, x.letter(a));
        if (w.length() >= 2 && !s.with_lead(w.word).empty()) continue;
        out.push_back(w);
        next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> irr_counts(const RelationSet& s, int degree_bound) {
  std::vector<std::size_t> c(degree_bound + 1, 0);
  for (auto& m : irr_enumerate(s, degree_bound)) ++c[m.degree];
  return c;
}

// All nonempty words with degree at most d, deg-length-lex order.
inline std::vector<Monomial> words_up_to(const Alphabet& x, int d) {
  std::vector<Monomial> out;
  for (int k = 1; k <= d; ++k) {
    auto w = words_of_degree(x, k);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

struct Composition {
  enum class Kind { Inclusion, LeftMultiplication };
  Kind kind = Kind::Inclusion;
  std::size_t f = 0;
  Descriptor g;    // inclusion: the normal g-polynomial
  Monomial mu;     // left multiplication: the left factor
  LbPolynomial polynomial;
  Monomial bound;  // inclusion: f-bar
  std::uint32_t bound_degree = 0;
};

inline const char* kind_name(Composition::Kind k) {
  return k == Composition::Kind::Inclusion ? "inclusion" : "left-multiplication";
}

inline std::vector<Composition> inclusion_compositions(const RelationSet& s,
                                                       int degree_bound = std::numeric_limits<int>::max()) {
  std::vector<Composition> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Monomial& lead = s.lead(i);
    if (static_cast<int>(lead.degree) > degree_bound) continue;
    for (auto& d : find_descriptors(lead, s, i)) {
      Composition c;
      c.kind = Composition::Kind::Inclusion;
      c.f = i;
      c.g = d;
      c.polynomial = s[i] - realize(d, s);
      c.bound = lead;
      c.bound_degree = lead.degree;
      out.push_back(std::move(c));
    }
  }
  return out;
}

struct LeftTask {
  std::size_t f;
  Monomial mu;
};

inline std::vector<LeftTask> left_mul_tasks(const RelationSet& s, int degree_bound) {
  std::vector<LeftTask> out;
  int maxd = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    maxd = std::max(maxd, degree_bound - static_cast<int>(s.lead(i).degree));
  auto words = words_up_to(s.alphabet(), std::max(0, maxd));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.lead(i).length() <= 1) continue;
    int room = degree_bound - static_cast<int>(s.lead(i).degree);
    for (auto& mu : words) {
      if (static_cast<int>(mu.degree) > room) break;
      out.push_back({i, mu});
    }
  }
  return out;
}

inline Composition left_mul_composition(const RelationSet& s, const LeftTask& t) {
  Composition c;
  c.kind = Composition::Kind::LeftMultiplication;
  c.f = t.f;
  c.mu = t.mu;
  c.polynomial = multiply(t.mu, s[t.f], s.alphabet());
  c.bound_degree = t.mu.degree + s.lead(t.f).degree;
  return c;
}

inline std::vector<Composition> left_mul_compositions(const RelationSet& s, int degree_bound) {
  std::vector<Composition> out;
  for (auto& t : left_mul_tasks(s, degree_bound)) {
    auto c = left_mul_composition(s, t);
    if (!c.polynomial.is_zero()) out.push_back(std::move(c));
  }
  return out;
}

struct Triviality {
  bool trivial = false;
  LbPolynomial remainder;
  std::vector<TraceEntry> certificate;
  std::string method;
};

namespace detail {

inline std::vector<Descriptor> descriptors_up_to(const RelationSet& s, int degree_bound) {
  auto words = words_up_to(s.alphabet(), degree_bound);
  std::vector<Descriptor> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int room = degree_bound - static_cast<int>(s.lead(i).degree);
    if (room < 0) continue;
    out.push_back({i, Monomial{}, Monomial{}});
    for (auto& v : words) {
      if (static_cast<int>(v.degree) > room) break;
      out.push_back({i, Monomial{}, v});
    }
    if (s.lead(i).length() != 1) continue;
    for (auto& u : words) {
      if (static_cast<int>(u.degree) > room) break;
      out.push_back({i, u, Monomial{}});
      for (auto& v : words) {
        if (static_cast<int>(u.degree + v.degree) > room) break;
        out.push_back({i, u, v});
      }
    }
  }
  return out;
}

inline Triviality exact_membership(const LbPolynomial& h, const RelationSet& s,
                                   const std::vector<Descriptor>& ds) {
  Echelon<Monomial, std::greater<>, MonomialHash> ech(s.field(), true);
  for (std::size_t i = 0; i < ds.size(); ++i) ech.insert(realize(ds[i], s).terms(), i);
  auto [res, combo] = ech.reduce(h.terms());
  Triviality t;
  t.method = "linear-algebra";
  t.trivial = res.empty();
  t.remainder = LbPolynomial::from_sorted(s.field(), res);
  if (t.trivial)
    for (auto& [i, c] : combo) t.certificate.push_back({c, ds[i]});
  return t;
}

}  // namespace detail

// Greedy elimination; with `exact`, a failed elimination falls back to a
// linear-algebra membership test in the span of admissible normal S-polynomials.
inline Triviality is_trivial_mod(const LbPolynomial& h, const RelationSet& s, const Monomial& bound,
                                 bool exact = false) {
  auto r = reduce(h, s);
  Triviality t;
  t.method = "reduction";
  t.remainder = r.remainder;
  t.trivial = r.remainder.is_zero();
  for (auto& e : r.trace)
    if (!(descriptor_lead(e.descriptor, s) < bound)) t.trivial = false;
  if (t.trivial) {
    t.certificate = std::move(r.trace);
    return t;
  }
  if (!exact) return t;
  auto all = detail::descriptors_up_to(s, static_cast<int>(bound.degree));
  std::vector<Descriptor> ds;
  for (auto& d : all)
    if (descriptor_lead(d, s) < bound) ds.push_back(d);
  return detail::exact_membership(h, s, ds);
}

inline Triviality is_trivial_mod(const LbPolynomial& h, const RelationSet& s, int degree, bool exact = false) {
  auto r = reduce(h, s);
  Triviality t;
  t.method = "reduction";
  t.remainder = r.remainder;
  t.trivial = r.remainder.is_zero();
  for (auto& e : r.trace)
    if (static_cast<int>(descriptor_lead(e.descriptor, s).degree) > degree) t.trivial = false;
  if (t.trivial) {
    t.certificate = std::move(r.trace);
    return t;
  }
  if (!exact) return t;
  return detail::exact_membership(h, s, detail::descriptors_up_to(s, degree));
}

struct CompositionRecord {
  Composition composition;
  Triviality result;
};

struct GsbReport {
  int degree_bound = 0;
  bool passed = true;
  std::size_t inclusion_count = 0, left_count = 0;
  std::vector<CompositionRecord> records;

  std::vector<const CompositionRecord*> failures() const {
    std::vector<const CompositionRecord*> out;
    for (auto& r : records)
      if (!r.result.trivial) out.push_back(&r);
    return out;
  }
};

inline GsbReport gsb_check(const RelationSet& s, int degree_bound, unsigned jobs = 0, bool exact = false) {
  GsbReport rep;
  rep.degree_bound = degree_bound;
  auto inc = inclusion_compositions(s, degree_bound);
  auto tasks = left_mul_tasks(s, degree_bound);
  std::vector<CompositionRecord> inc_recs(inc.size());
  parallel_for(inc.size(), jobs, [&](std::size_t i) {
    inc_recs[i].composition = std::move(inc[i]);
    const auto& c = inc_recs[i].composition;
    inc_recs[i].result = is_trivial_mod(c.polynomial, s, c.bound, exact);
  });
  std::vector<std::optional<CompositionRecord>> left_recs(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    auto c = left_mul_composition(s, tasks[i]);
    if (c.polynomial.is_zero()) return;
    CompositionRecord r;
    r.result = is_trivial_mod(c.polynomial, s, static_cast<int>(c.bound_degree), exact);
    r.composition = std::move(c);
    left_recs[i] = std::move(r);
  });
  rep.inclusion_count = inc_recs.size();
  for (auto& r : inc_recs) rep.records.push_back(std::move(r));
  for (auto& r : left_recs)
    if (r) {
      ++rep.left_count;
      rep.records.push_back(std::move(*r));
    }
  for (auto& r : rep.records)
    if (!r.result.trivial) rep.passed = false;
  return rep;
}

struct CompletionResult {
  RelationSet relations;
  std::vector<std::string> provenance;
  bool cap_exhausted = false;
  int rounds = 0;
};

// Round-based saturation: reduce every composition within the cap against the
// current set, adjoin the nonzero remainders in ascending order of leading
// monomial, and repeat until a full round adds nothing.
inline CompletionResult complete(const RelationSet& input, int degree_cap, unsigned jobs = 0,
                                 std::size_t max_relations = 20000) {
  CompletionResult out;
  out.relations = RelationSet(input.alphabet(), input.field());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out.relations.add(input[i]);
    out.provenance.push_back("input " + std::to_string(i + 1));
  }
  const Alphabet& x = input.alphabet();
  while (true) {
    ++out.rounds;
    const RelationSet& cur = out.relations;
    auto inc = inclusion_compositions(cur, degree_cap);
    auto tasks = left_mul_tasks(cur, degree_cap);
    struct Candidate {
      LbPolynomial poly;
      std::string origin;
    };
    std::vector<std::optional<Candidate>> found(inc.size() + tasks.size());
    parallel_for(found.size(), jobs, [&](std::size_t i) {
      LbPolynomial p;
      std::string origin;
      if (i < inc.size()) {
        p = inc[i].polynomial;
        origin = "inclusion s" + std::to_string(inc[i].f + 1) + " with " + to_string(inc[i].g, x);
      } else {
        auto c = left_mul_composition(cur, tasks[i - inc.size()]);
        p = std::move(c.polynomial);
        origin = "left " + to_string(c.mu, x) + " * s" + std::to_string(c.f + 1);
      }
      if (p.is_zero()) return;
      auto r = reduce(p, cur);
      if (!r.remainder.is_zero()) found[i] = Candidate{std::move(r.remainder), std::move(origin)};
    });
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < found.size(); ++i)
      if (found[i]) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return found[a]->poly.leading() < found[b]->poly.leading();
    });
    std::size_t added = 0;
    for (std::size_t i : order) {
      auto r = reduce(found[i]->poly, out.relations);
      if (r.remainder.is_zero()) continue;
      if (out.relations.size() >= max_relations) {
        out.cap_exhausted = true;
        return out;
      }
      out.relations.add(r.remainder);
      out.provenance.push_back(found[i]->origin);
      ++added;
    }
    if (added == 0) return out;
  }
}

inline void require_gsb(const RelationSet& s, int cap, unsigned jobs) {
  auto rep = gsb_check(s, cap, jobs);
  if (!rep.passed) throw GsbError("relation set is not a Groebner-Shirshov basis up to degree " + std::to_string(cap));
}

inline RelationSet minimal_basis_unchecked(const RelationSet& s) {
  RelationSet s0(s.alphabet(), s.field());
  std::unordered_map<Word, bool, WordHash> seen;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (seen.emplace(s.lead(i).word, true).second) s0.add(s[i]);
  RelationSet s1(s.alphabet(), s.field());
  for (std::size_t i = 0; i < s0.size(); ++i)
    if (find_descriptors(s0.lead(i), s0, i, true).empty()) s1.add(s0[i]);
  return s1;
}

inline RelationSet minimal_basis(const RelationSet& s, int cap, unsigned jobs = 0) {
  require_gsb(s, cap, jobs);
  return minimal_basis_unchecked(s);
}

inline RelationSet reduced_basis_unchecked(const RelationSet& s) {
  RelationSet s1 = minimal_basis_unchecked(s);
  RelationSet s2(s.alphabet(), s.field());
  for (std::size_t i = 0; i < s1.size(); ++i) s2.add(reduce(s1[i], s1, i).remainder);
  return s2;
}

inline RelationSet reduced_basis(const RelationSet& s, int cap, unsigned jobs = 0) {
  require_gsb(s, cap, jobs);
  return reduced_basis_unchecked(s);
}

inline bool is_reduced(const RelationSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (auto& [m, c] : s[i].terms())
      if (!irr_membership(m, s, i)) return false;
  return true;
}

inline bool ideal_membership(const LbPolynomial& f, const RelationSet& s, int verified_degree) {
  if (static_cast<int>(f.degree()) > verified_degree)
    throw GsbError("degree " + std::to_string(f.degree()) + " exceeds the verified cap " +
                   std::to_string(verified_degree));
  return reduce(f, s).remainder.is_zero();
}

struct NotInIdeal : GsbError {
  using GsbError::GsbError;
};

// The unique expression h = sum a_i [s_i v_i]_L with strictly decreasing leads.
inline std::vector<TraceEntry> express_normal(const LbPolynomial& h, const RelationSet& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.lead(i).length() <= 1) throw GsbError("express_normal needs leading monomials of length > 1");
  auto red = reduce(h, r);
  if (!red.remainder.is_zero())
    throw NotInIdeal("element is not in the ideal: remainder " + to_string(red.remainder, r.alphabet()));
  return red.trace;
}

struct UnitElimination {
  Alphabet alphabet;
  RelationSet relations;
  std::vector<Letter> kept;  // new letter index -> old letter index
  std::vector<std::size_t> removed_relations;
};

inline UnitElimination eliminate_unit_leads(const RelationSet& r) {
  if (!is_reduced(r)) throw GsbError("relation set is not reduced");
  const Alphabet& x = r.alphabet();
  std::vector<bool> gone(x.size(), false);
  UnitElimination out;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.lead(i).length() == 1) {
      gone[r.lead(i).word[0]] = true;
      out.removed_relations.push_back(i);
    }
  std::vector<int> remap(x.size(), -1);
  for (Letter a = 0; a < x.size(); ++a)
    if (!gone[a]) {
      remap[a] = static_cast<int>(out.kept.size());
      out.kept.push_back(a);
      out.alphabet.add(x[a]);
    }
  if (out.alphabet.empty()) throw GsbError("every generator is eliminated");
  out.relations = RelationSet(out.alphabet, r.field());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.lead(i).length() == 1) continue;
    std::vector<LbPolynomial::Entry> terms;
    for (auto& [m, c] : r[i].terms()) {
      Word w;
      for (Letter a : m.word) {
        if (remap[a] < 0) throw GsbError("relation support uses an eliminated generator");
        w.push_back(static_cast<Letter>(remap[a]));
      }
      terms.emplace_back(out.alphabet.monomial(w), c);
    }
    out.relations.add(LbPolynomial::from_terms(r.field(), std::move(terms)));
  }
  return out;
}

// Dimension of the degree-n piece of Lbs(X)/Id(S). Id(S) in degree n is
// spanned by [s w]_L and [(mu s) w]_L over monomials mu, w.
inline std::size_t quotient_dimension(const RelationSet& s, int degree, std::size_t cap = 200000) {
  if (!s.is_degree_homogeneous()) throw GsbError("quotient_dimension needs degree-homogeneous relations");
  const Alphabet& x = s.alphabet();
  std::vector<std::size_t> count(degree + 1, 0);
  count[0] = 1;
  for (int k = 1; k <= degree; ++k)
    for (Letter a = 0; a < x.size(); ++a)
      if (x.degree(a) <= k) count[k] = std::min(cap + 1, count[k] + count[k - x.degree(a)]);
  if (count[degree] > cap) throw ResourceError("degree exceeds the configured resource cap");
  auto cols = words_of_degree(x, degree);
  std::vector<std::vector<Monomial>> by(degree + 1);
  for (int k = 0; k <= degree; ++k) by[k] = words_of_degree(x, k);
  Echelon<Monomial, std::greater<>, MonomialHash> ech(s.field());
  for (std::size_t i = 0; i < s.size(); ++i) {
    int d = static_cast<int>(s.lead(i).degree);
    if (d > degree) continue;
    for (int e = 0; e + d <= degree; ++e)
      for (const auto& mu : by[e]) {
        LbPolynomial base = mu.empty() ? s[i] : multiply(mu, s[i], x);
        if (base.is_zero()) continue;
        for (const auto& w : by[degree - d - e]) ech.insert(base.append(w).terms());
      }
  }
  return cols.size() - ech.rank();
}

}  // namespace lbgsb
