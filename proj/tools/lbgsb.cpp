#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lbgsb/lbgsb.hpp"

using namespace lbgsb;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kMalformed = 2, kResource = 3 };

struct Session {
  std::uint64_t characteristic = 0;
  std::string rel, alphabet, format = "text";
  unsigned jobs = 0;
  std::optional<int> bound, degree;

  Field field() const {
    try {
      return Field::of_characteristic(characteristic);
    } catch (const FieldError& e) {
      throw InputError("--char", 0, e.what());
    }
  }
  bool structured() const { return format == "json"; }

  Alphabet load_alphabet() const {
    if (!alphabet.empty()) return parse_alphabet(read_file(alphabet), alphabet);
    if (!rel.empty()) return relations().alphabet();
    throw InputError("<args>", 0, "an alphabet is required (--alphabet or --rel)");
  }
  RelationSet relations() const {
    if (rel.empty()) throw InputError("<args>", 0, "--rel is required");
    std::optional<Alphabet> fb;
    if (!alphabet.empty()) fb = parse_alphabet(read_file(alphabet), alphabet);
    return parse_presentation(read_file(rel), field(), rel, fb ? &*fb : nullptr);
  }
  int need_bound(const char* what) const {
    if (!bound) throw InputError("<args>", 0, std::string("--bound is required for ") + what);
    if (*bound < 1) throw InputError("<args>", 0, "--bound must be at least 1");
    return *bound;
  }
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

LbPolynomial parse_arg(const std::string& text, const Alphabet& x, const Field& f) {
  try {
    return parse_polynomial(text, x, f);
  } catch (const ParseError& e) {
    throw InputError("<argument>", 0, std::string(e.what()) + " at column " + std::to_string(e.position + 1));
  }
}

json trace_json(const std::vector<TraceEntry>& trace, const Alphabet& x) {
  json a = json::array();
  for (auto& t : trace) a.push_back({{"coefficient", t.coefficient.to_string()}, {"descriptor", to_string(t.descriptor, x)}});
  return a;
}

std::string composition_witness(const Composition& c, const RelationSet& s) {
  const Alphabet& x = s.alphabet();
  if (c.kind == Composition::Kind::Inclusion)
    return "(s" + std::to_string(c.f + 1) + ", " + to_string(c.g, x) + ")_" + to_string(c.bound, x);
  return "(" + to_string(c.mu, x) + " s" + std::to_string(c.f + 1) + ")";
}

int cmd_gsb_check(const Session& s, bool exact) {
  RelationSet r = s.relations();
  int bound = s.need_bound("gsb-check");
  auto rep = gsb_check(r, bound, s.jobs, exact);
  const Alphabet& x = r.alphabet();
  if (s.structured()) {
    for (auto& rec : rep.records) {
      const auto& c = rec.composition;
      emit({{"record", "composition"},
            {"kind", kind_name(c.kind)},
            {"status", rec.result.trivial ? "trivial" : "nontrivial"},
            {"witness", composition_witness(c, r)},
            {"polynomial", to_string(c.polynomial, x)},
            {"remainder", to_string(rec.result.remainder, x)},
            {"method", rec.result.method},
            {"certificate", trace_json(rec.result.certificate, x)}});
    }
    emit({{"record", "summary"},
          {"passed", rep.passed},
          {"degree_bound", bound},
          {"inclusion", rep.inclusion_count},
          {"left_multiplication", rep.left_count},
          {"failures", rep.failures().size()}});
  } else {
    for (auto* f : rep.failures())
      std::cout << "nontrivial " << kind_name(f->composition.kind) << " " << composition_witness(f->composition, r)
                << ": " << to_string(f->composition.polynomial, x) << " -> remainder "
                << to_string(f->result.remainder, x) << "\n";
    std::cout << rep.inclusion_count << " inclusion and " << rep.left_count << " left-multiplication compositions\n";
    if (rep.passed)
      std::cout << "verified up to degree " << bound << "\n";
    else
      std::cout << "not a Groebner-Shirshov basis: " << rep.failures().size() << " nontrivial compositions\n";
  }
  return rep.passed ? kOk : kFailed;
}

int cmd_reduce(const Session& s, const std::string& poly) {
  RelationSet r = s.relations();
  auto f = parse_arg(poly, r.alphabet(), r.field());
  auto red = reduce(f, r);
  if (s.structured())
    emit({{"input", to_string(f, r.alphabet())},
          {"remainder", to_string(red.remainder, r.alphabet())},
          {"trace", trace_json(red.trace, r.alphabet())}});
  else
    std::cout << to_string(red.remainder, r.alphabet()) << "\n";
  return kOk;
}

int cmd_member(const Session& s, const std::string& poly) {
  RelationSet r = s.relations();
  auto f = parse_arg(poly, r.alphabet(), r.field());
  auto red = reduce(f, r);
  bool member = red.remainder.is_zero();
  std::string verdict = member ? "member" : "not a member";
  if (!member) {
    int bound = s.need_bound("deciding non-membership");
    if (static_cast<int>(f.degree()) > bound)
      throw ResourceError("degree " + std::to_string(f.degree()) + " exceeds --bound " + std::to_string(bound));
    if (!gsb_check(r, bound, s.jobs).passed) {
      verdict = "undetermined: relations are not a Groebner-Shirshov basis up to degree " + std::to_string(bound);
    }
  }
  if (s.structured())
    emit({{"member", member}, {"verdict", verdict}, {"remainder", to_string(red.remainder, r.alphabet())},
          {"trace", trace_json(red.trace, r.alphabet())}});
  else
    std::cout << verdict << "\n";
  return member ? kOk : kFailed;
}

int cmd_irr(const Session& s, bool list) {
  RelationSet r = s.relations();
  int bound = s.need_bound("irr");
  auto words = irr_enumerate(r, bound);
  auto counts = irr_counts(r, bound);
  if (s.structured()) {
    for (int d = 1; d <= bound; ++d) {
      json ws = json::array();
      if (list)
        for (auto& m : words)
          if (static_cast<int>(m.degree) == d) ws.push_back(to_string(m, r.alphabet()));
      json j = {{"degree", d}, {"count", counts[d]}};
      if (list) j["words"] = ws;
      emit(j);
    }
  } else {
    for (int d = 1; d <= bound; ++d) std::cout << "degree " << d << ": " << counts[d] << "\n";
    if (list)
      for (auto& m : words) std::cout << to_string(m, r.alphabet()) << "\n";
  }
  return kOk;
}

int cmd_dim(const Session& s) {
  RelationSet r = s.relations();
  if (!s.degree) throw InputError("<args>", 0, "--degree is required");
  auto d = quotient_dimension(r, *s.degree);
  if (s.structured())
    emit({{"degree", *s.degree}, {"dimension", d}});
  else
    std::cout << d << "\n";
  return kOk;
}

int cmd_complete(const Session& s, std::size_t max_rel) {
  RelationSet r = s.relations();
  int bound = s.need_bound("complete");
  auto res = complete(r, bound, s.jobs, max_rel);
  if (s.structured()) {
    for (std::size_t i = 0; i < res.relations.size(); ++i)
      emit({{"index", i + 1}, {"relation", to_string(res.relations[i], r.alphabet())}, {"origin", res.provenance[i]}});
    emit({{"record", "summary"}, {"relations", res.relations.size()}, {"rounds", res.rounds},
          {"degree_bound", bound}, {"cap_exhausted", res.cap_exhausted}});
  } else {
    std::cout << "# completed up to degree " << bound << " in " << res.rounds << " rounds\n";
    std::cout << format_presentation(res.relations);
  }
  if (res.cap_exhausted) {
    std::cerr << "relation cap of " << max_rel << " reached before saturation\n";
    return kResource;
  }
  return kOk;
}

int cmd_reduced(const Session& s) {
  RelationSet r = s.relations();
  int bound = s.need_bound("reduced");
  auto out = reduced_basis(r, bound, s.jobs);
  std::cout << format_presentation(out);
  return kOk;
}

int cmd_eliminate(const Session& s) {
  auto el = eliminate_unit_leads(s.relations());
  std::cout << format_presentation(el.relations);
  return kOk;
}

int cmd_normalize(const Session& s, const std::string& poly) {
  Alphabet x = s.load_alphabet();
  auto f = parse_arg(poly, x, s.field());
  if (s.structured())
    emit({{"normal_form", to_string(f, x)}});
  else
    std::cout << to_string(f, x) << "\n";
  return kOk;
}

int cmd_product(const Session& s, const std::string& a, const std::string& b) {
  Alphabet x = s.load_alphabet();
  auto p = multiply(parse_arg(a, x, s.field()), parse_arg(b, x, s.field()), x);
  if (s.structured())
    emit({{"product", to_string(p, x)}});
  else
    std::cout << to_string(p, x) << "\n";
  return kOk;
}

int cmd_na_check(const Session& s, bool leibniz) {
  int bound = s.need_bound("na-check");
  Alphabet x;
  std::vector<NAPolynomial> rels;
  if (leibniz) {
    x = s.load_alphabet();
    rels = leibniz_relations(x, s.field(), bound);
  } else {
    if (s.rel.empty()) throw InputError("<args>", 0, "--rel or --leibniz is required");
    if (!s.alphabet.empty()) x = parse_alphabet(read_file(s.alphabet), s.alphabet);
    rels = parse_na_relations(read_file(s.rel), s.field(), x, s.rel);
  }
  auto rep = na_gsb_check(rels, bound, s.jobs);
  if (s.structured()) {
    for (auto& f : rep.failures)
      emit({{"record", "composition"}, {"status", "nontrivial"}, {"f", f.composition.f + 1},
            {"g", f.composition.g + 1}, {"context", to_string(f.composition.mu, x)},
            {"remainder", to_string(f.remainder, x)}});
    emit({{"record", "summary"}, {"passed", rep.passed}, {"length_bound", bound}, {"relations", rels.size()},
          {"compositions", rep.compositions}});
  } else {
    for (auto& f : rep.failures)
      std::cout << "nontrivial (f" << f.composition.f + 1 << ", f" << f.composition.g + 1 << ") at "
                << to_string(f.composition.mu, x) << " -> remainder " << to_string(f.remainder, x) << "\n";
    std::cout << rels.size() << " relations, " << rep.compositions << " compositions\n";
    std::cout << (rep.passed ? "verified up to length " : "failed up to length ") << bound << "\n";
  }
  return rep.passed ? kOk : kFailed;
}

int cmd_preset(const Session& s, const std::string& family) {
  PresetSpec spec{parse_preset_family(family), s.load_alphabet(), s.field(), s.bound.value_or(7)};
  std::cout << "# " << family << " over " << s.field().name() << ", degree bound " << spec.degree_bound << "\n";
  std::cout << format_presentation(generate_preset(spec));
  return kOk;
}

struct ExtArgs {
  std::string a, b, action, factors;
  bool abelian = false;
};

void print_report(const Session& s, const CheckReport& r) {
  if (s.structured()) {
    for (auto& res : r.residuals)
      emit({{"record", "residual"}, {"check", r.name}, {"witness", res.witness}, {"value", res.value}});
    emit({{"record", "check"}, {"check", r.name}, {"passed", r.passed}, {"evaluated", r.evaluated},
          {"failures", r.residuals.size()}});
    return;
  }
  std::cout << (r.passed ? "pass " : "FAIL ") << r.name << " (" << r.evaluated << " evaluated)\n";
  std::size_t shown = 0;
  for (auto& res : r.residuals) {
    if (++shown > 20) {
      std::cout << "  ... " << r.residuals.size() - 20 << " more\n";
      break;
    }
    std::cout << "  " << res.witness << ": " << res.value << "\n";
  }
}

int cmd_ext(const Session& s, const ExtArgs& e, bool build) {
  Field f = s.field();
  if (e.a.empty() || e.action.empty() || e.factors.empty())
    throw InputError("<args>", 0, "--A, --action and --factors are required");
  AlgebraTable a = parse_algebra_table(read_file(e.a), f, e.a);
  ExtensionResult res;
  std::vector<CheckReport> checks;
  if (!e.b.empty()) {
    TableExtensionInput in;
    in.a = a;
    in.b = parse_algebra_table(read_file(e.b), f, e.b);
    in.action = parse_action(read_file(e.action), a, in.b.alphabet(), e.action);
    in.factor_set = parse_table_factor_set(read_file(e.factors), a, in.b, e.factors);
    if (e.abelian)
      res = abelian_extension_build(in);
    else if (build)
      res = build_extension(in, s.bound.value_or(2));
    else
      res.checks = table_extension_checks(in, s.bound.value_or(2));
  } else {
    PresentationExtensionInput in;
    in.a = a;
    in.r = s.relations();
    in.bound = s.need_bound("presentation mode");
    in.action = parse_action(read_file(e.action), a, in.r.alphabet(), e.action);
    in.factor_set = parse_factor_set(read_file(e.factors), a, in.r.size(), e.factors);
    if (build)
      res = build_extension(in, s.jobs);
    else
      res.checks = presentation_extension_checks(in, s.jobs);
  }
  for (auto& c : res.checks) print_report(s, c);
  bool ok = res.checks_passed();
  if (build && res.built) {
    print_report(s, res.audit);
    print_report(s, res.exactness);
    ok = ok && res.audit.passed && res.exactness.passed;
    if (s.structured()) {
      json basis = json::array();
      for (auto& g : res.table.basis) basis.push_back({{"name", g.name}, {"parity", g.parity}});
      emit({{"record", "extension"}, {"basis", basis}, {"table", format_algebra_table(res.table)},
            {"truncation", res.bound}});
    } else {
      if (res.bound) std::cout << "# products of B-side elements with degrees summing past " << res.bound << " omitted\n";
      std::cout << format_algebra_table(res.table);
    }
  }
  if (!s.structured()) std::cout << (ok ? "all checks passed\n" : "checks failed\n");
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner-Shirshov bases for free Leibniz superalgebras"};
  app.require_subcommand(1);
  Session s;
  auto common = [&](CLI::App* c) {
    c->add_option("--char", s.characteristic, "field characteristic: 0 or a prime");
    c->add_option("--rel", s.rel, "presentation file");
    c->add_option("--alphabet", s.alphabet, "alphabet file");
    c->add_option("--format", s.format, "report format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--jobs", s.jobs, "worker threads, 0 = all cores");
    c->add_option("--bound", s.bound, "degree cap");
    c->add_option("--degree", s.degree, "degree");
  };
  std::string poly, poly2, family;
  bool exact = false, list = false, leibniz = false;
  std::size_t max_rel = 20000;
  ExtArgs ext;

  auto* normalize = app.add_subcommand("normalize", "normal form of a bracketed expression");
  common(normalize);
  normalize->add_option("expr", poly)->required();
  auto* product = app.add_subcommand("product", "product of two polynomials");
  common(product);
  product->add_option("left", poly)->required();
  product->add_option("right", poly2)->required();
  auto* reduce_cmd = app.add_subcommand("reduce", "remainder modulo a relation set");
  common(reduce_cmd);
  reduce_cmd->add_option("poly", poly)->required();
  auto* member = app.add_subcommand("member", "ideal membership");
  common(member);
  member->add_option("poly", poly)->required();
  auto* irr = app.add_subcommand("irr", "irreducible words by degree");
  common(irr);
  irr->add_flag("--list", list, "print the words");
  auto* dim = app.add_subcommand("dim", "graded dimension of the quotient");
  common(dim);
  auto* check = app.add_subcommand("gsb-check", "verify compositions up to a degree");
  common(check);
  check->add_flag("--exact", exact, "fall back to linear algebra when greedy reduction fails");
  auto* comp = app.add_subcommand("complete", "bounded completion");
  common(comp);
  comp->add_option("--max-relations", max_rel, "relation cap");
  auto* reduced = app.add_subcommand("reduced", "reduced basis");
  common(reduced);
  auto* elim = app.add_subcommand("eliminate-units", "remove generators with one-letter leads");
  common(elim);
  auto* na = app.add_subcommand("na-check", "composition check in the free nonassociative algebra");
  common(na);
  na->add_flag("--leibniz", leibniz, "use the Leibniz superidentity relations on the alphabet");
  auto* preset = app.add_subcommand("preset", "emit a preset presentation");
  common(preset);
  preset->add_option("family", family)->required();
  auto ext_opts = [&](CLI::App* c) {
    common(c);
    c->add_option("--A", ext.a, "algebra table of the kernel");
    c->add_option("--B", ext.b, "algebra table of the quotient (table mode)");
    c->add_option("--action", ext.action, "action file");
    c->add_option("--factors", ext.factors, "factor set file");
    c->add_flag("--abelian", ext.abelian, "abelian kernel build");
  };
  auto* ext_check = app.add_subcommand("ext-check", "check extension data");
  ext_opts(ext_check);
  auto* ext_build = app.add_subcommand("ext-build", "build and audit an extension");
  ext_opts(ext_build);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*normalize) return cmd_normalize(s, poly);
    if (*product) return cmd_product(s, poly, poly2);
    if (*reduce_cmd) return cmd_reduce(s, poly);
    if (*member) return cmd_member(s, poly);
    if (*irr) return cmd_irr(s, list);
    if (*dim) return cmd_dim(s);
    if (*check) return cmd_gsb_check(s, exact);
    if (*comp) return cmd_complete(s, max_rel);
    if (*reduced) return cmd_reduced(s);
    if (*elim) return cmd_eliminate(s);
    if (*na) return cmd_na_check(s, leibniz);
    if (*preset) return cmd_preset(s, family);
    if (*ext_check) return cmd_ext(s, ext, false);
    if (*ext_build) return cmd_ext(s, ext, true);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const FieldError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const GsbError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const ExtensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kMalformed;
}
