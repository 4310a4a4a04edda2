#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "stonedual/catalog.hpp"
#include "stonedual/duality.hpp"
#include "stonedual/error.hpp"
#include "stonedual/law_suite.hpp"

namespace stonedual::dsl {

using nlohmann::json;

namespace {

// Outcome of one command before formatting.
struct Report {
  int exit_code = 0;
  json data = json::object();
  std::vector<std::string> lines;
  std::optional<std::string> raw;  // emitted verbatim in both formats
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Object load(const std::string& input) {
  if (input.empty()) throw InputError("this command needs an input object (path or inline JSON)");
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (input[first] == '{' || input[first] == '[')) return parse_object(input);
  std::ifstream file(input);
  if (!file) throw InputError("cannot read " + input);
  std::ostringstream text;
  text << file.rdbuf();
  return parse_object(text.str());
}

[[noreturn]] void wrong_input(const Object& o, const std::string& expected) {
  throw InputError("expected " + expected + ", got " + std::string(kind_name(o)));
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Rendering of derived structures.

json pair_json(const DzAlgebra& d) { return to_json(Object{PairObject{d.algebra(), d.points()}}); }

json lba_json(const LbaPair& p) {
  json j = to_json(Object{p.ideal()});
  j["lba"] = p.is_lba();
  j["zlba"] = p.is_zlba();
  return j;
}

json hom_json(const Homomorphism& h) { return to_json(Object{h}); }

json dz_morphism_json(const DzMorphism& m) {
  return {{"kind", "dz-morphism"},
          {"source", pair_json(m.source())},
          {"target", pair_json(m.target())},
          {"map", hom_json(m.map())},
          {"point_map", to_json(m.point_map(), &m.target().algebra(), &m.source().algebra())}};
}

json lba_morphism_json(const LbaMorphism& m) {
  return {{"kind", "lba-morphism"},
          {"source", lba_json(m.source())},
          {"target", lba_json(m.target())},
          {"map", hom_json(m.map())}};
}

json subspace_json(const Subspace& s) {
  json j = to_json(s.space);
  j["ambient"] = to_json(Object{PairObject{s.algebra, s.points}});
  return j;
}

json levels_json(const MapLevels& l) {
  json j = {{"injective", l.injective},
            {"atoms_are_meets", l.atoms_are_meets},
            {"z_map", l.z_map},
            {"mz_map", l.mz_map},
            {"lmz_map", l.lmz_map}};
  if (!l.witness.empty()) j["witness"] = l.witness;
  return j;
}

json mz_json(const MzMap& m) {
  json j = {{"kind", "mz-map"},
            {"algebra", to_json(m.algebra())},
            {"y", to_json(m.y_points())},
            {"x_alpha", to_json(Object{PairObject{m.algebra(), m.x_alpha()}})["points"]},
            {"levels", levels_json(m.levels())}};
  if (m.table()) j["table"] = hom_json(*m.table());
  return j;
}

json mbool_json(const MBoolMorphism& m) {
  return {{"kind", "mbool-morphism"},
          {"source", mz_json(m.source())},
          {"target", mz_json(m.target())},
          {"map", hom_json(m.map())},
          {"sigma_dual", to_json(m.sigma_dual(), nullptr, nullptr)}};
}

// A homomorphism read as a morphism between the whole Stone spaces, the only
// dz objects a representable algebra has.
DzAlgebra whole(const Algebra& a) { return DzAlgebra::make(a, PointSet::full(a.shape()), DzLevel::Ldz); }
DzMorphism whole(const Homomorphism& h) { return DzMorphism::make(whole(h.domain()), whole(h.codomain()), h, h.dual()); }
LbaMorphism full_lba(const Homomorphism& h) {
  return LbaMorphism(LbaPair(Ideal::full(h.domain())), LbaPair(Ideal::full(h.codomain())), h);
}

DzAlgebra require_pair(const Object& o, DzLevel level) {
  const auto* p = std::get_if<PairObject>(&o);
  if (!p) wrong_input(o, "a pair {\"algebra\", \"points\"}");
  return DzAlgebra::make(p->algebra, p->points, level);
}

const Ideal& require_ideal(const Object& o) {
  const auto* i = std::get_if<Ideal>(&o);
  if (!i) wrong_input(o, "an ideal {\"algebra\", \"ideal\"}");
  return *i;
}

Report derived(const std::string& label, json data) {
  Report r;
  r.lines.push_back(label);
  r.lines.push_back(data.dump(2));
  r.data = std::move(data);
  return r;
}

// ---------------------------------------------------------------------------
// dual

Report dual(const std::string& functor, const Object& o) {
  if (functor == "F") {
    if (const auto* s = std::get_if<SpacePresentation>(&o)) return derived("F(X) = (CO(X), X-hat)", pair_json(clopen_dual(*s)));
    if (const auto* f = std::get_if<SpaceMap>(&o)) return derived("F(f) = (CO(f), f-hat)", dz_morphism_json(clopen_dual(*f)));
    wrong_input(o, "a space or space-map");
  }
  if (functor == "G") {
    if (std::holds_alternative<PairObject>(o)) return derived("G(A, X) = X", subspace_json(underlying_space(require_pair(o, DzLevel::Dz))));
    if (const auto* h = std::get_if<Homomorphism>(&o)) return derived("G(phi, f) = f", to_json(Object{underlying_map(whole(*h))}));
    wrong_input(o, "a dz pair or homomorphism");
  }
  if (functor == "E") {
    if (std::holds_alternative<PairObject>(o)) return derived("E(A, X) = (A, I_X)", lba_json(to_lba(require_pair(o, DzLevel::Ldz))));
    if (const auto* h = std::get_if<Homomorphism>(&o)) return derived("E(phi, f) = phi", lba_morphism_json(to_lba(whole(*h))));
    wrong_input(o, "an ldz pair or homomorphism");
  }
  if (functor == "Ep") {
    if (std::holds_alternative<Ideal>(o)) return derived("Ep(A, I) = (A, X_I)", pair_json(to_ldz(LbaPair(require_ideal(o)))));
    if (const auto* h = std::get_if<Homomorphism>(&o)) return derived("Ep(phi) = (phi, f_phi)", dz_morphism_json(to_ldz(full_lba(*h))));
    wrong_input(o, "an ideal or homomorphism");
  }
  if (functor == "Fp") {
    if (std::holds_alternative<PairObject>(o)) return derived("Fp(A, X) = s_A^X", mz_json(to_mz_map(require_pair(o, DzLevel::Dz))));
    if (const auto* h = std::get_if<Homomorphism>(&o)) return derived("Fp(phi, f)", mbool_json(to_mz_map(whole(*h))));
    wrong_input(o, "a dz pair or homomorphism");
  }
  if (functor == "Gp") {
    if (const auto* h = std::get_if<Homomorphism>(&o)) {
      return derived("Gp(alpha) = (CO(X_alpha), X_alpha-hat)", pair_json(from_mz_map(MzMap::from_table(*h))));
    }
    if (std::holds_alternative<PairObject>(o)) {
      return derived("Gp(s_A^X)", pair_json(from_mz_map(MzMap::from_dz(require_pair(o, DzLevel::Dz)))));
    }
    wrong_input(o, "a homomorphism into a finite powerset or a dz pair");
  }
  if (functor == "theta-t") {
    if (const auto* s = std::get_if<SpacePresentation>(&o)) return derived("theta-t(X) = (CO(X), KO(X))", lba_json(theta_t(*s)));
    if (const auto* f = std::get_if<SpaceMap>(&o)) return derived("theta-t(f) = CO(f)", lba_morphism_json(theta_t(*f)));
    wrong_input(o, "a space or space-map");
  }
  if (functor == "theta-a") {
    if (const auto* i = std::get_if<Ideal>(&o)) return derived("theta-a(A, I) = L_I^A", subspace_json(theta_a(LbaPair(*i))));
    if (const auto* h = std::get_if<Homomorphism>(&o)) return derived("theta-a(phi)", to_json(Object{theta_a(full_lba(*h))}));
    wrong_input(o, "an ideal or homomorphism");
  }
  if (functor == "P") {
    if (const auto* s = std::get_if<FiniteSet>(&o)) return derived("P(X)", to_json(Object{powerset(s->size)}));
    if (const auto* f = std::get_if<FiniteFunction>(&o)) return derived("P(f) = preimage", to_json(Object{powerset_map(f->map, f->target)}));
    wrong_input(o, "a set or function");
  }
  if (functor == "At") {
    if (const auto* a = std::get_if<Algebra>(&o)) {
      return derived("At(B)", to_json(Object{FiniteSet{static_cast<Index>(atoms_of(*a).size())}}));
    }
    if (const auto* h = std::get_if<Homomorphism>(&o)) {
      const auto n = static_cast<Index>(atoms_of(h->domain()).size());
      return derived("At(sigma)", to_json(Object{FiniteFunction{atoms_map(*h), n}}));
    }
    wrong_input(o, "a finite algebra or homomorphism");
  }
  throw InputError("unknown functor \"" + functor + "\"");
}

// ---------------------------------------------------------------------------
// check

Report verdict(const std::string& law, bool pass, json detail, std::vector<std::string> notes = {}) {
  Report r;
  r.exit_code = pass ? 0 : 1;
  r.data = std::move(detail);
  r.data["law"] = law;
  r.data["pass"] = pass;
  r.lines.push_back(law + ": " + (pass ? "pass" : "fail"));
  for (auto& n : notes) r.lines.push_back("  " + n);
  return r;
}

Report from_records(const std::string& law, const LawReport& report) {
  Report r;
  r.exit_code = report.all_pass() ? 0 : 1;
  std::string text = report.to_json_lines();
  json summary = {{"law", law},
                  {"summary", true},
                  {"cases", report.records.size()},
                  {"failures", report.failures()},
                  {"vacuous", report.vacuous},
                  {"pass", report.all_pass()}};
  r.raw = text + summary.dump() + "\n";
  return r;
}

Report check_zlba(const Ideal& ideal) {
  const ZlbaVerdict trace = decide_zlba(ideal);
  const ZlbaVerdict joins = decide_zlba_by_joins(ideal);
  if (trace.is_lba != joins.is_lba || trace.is_zlba != joins.is_zlba) {
    Report r = verdict("zlba", false, {{"routes_agree", false}}, {"the two decision routes disagree"});
    return r;
  }
  json d = {{"lba", trace.is_lba}, {"zlba", trace.is_zlba}, {"routes_agree", true}, {"ideal", ideal.describe()}};
  std::vector<std::string> notes = {"ideal: " + ideal.describe(), "lba: " + yes_no(trace.is_lba),
                                    "zlba: " + yes_no(trace.is_zlba)};
  if (trace.density_witness) {
    d["density_witness"] = to_json(ideal.owner(), *trace.density_witness);
    notes.push_back("not dense: nothing nonzero below " + ideal.owner().describe(*trace.density_witness));
  }
  if (joins.join_witness) {
    d["witness"] = joins.join_witness->describe();
    notes.push_back("simple ideal without a join: " + joins.join_witness->describe());
  }
  if (trace.clopen_witness) {
    d["clopen_witness"] = trace.clopen_witness->describe();
    notes.push_back("clopen of L_I that is not a trace: " + trace.clopen_witness->describe());
  }
  if (!trace.reason.empty()) notes.push_back(trace.reason);
  return verdict("zlba", trace.is_zlba, d, notes);
}

Report check_pair_level(const std::string& law, const Object& o) {
  const auto* p = std::get_if<PairObject>(&o);
  if (!p) wrong_input(o, "a pair {\"algebra\", \"points\"}");
  const DzVerdict v = validate(p->algebra, p->points);
  const DzLevel level = law == "z" ? DzLevel::Z : law == "dz" ? DzLevel::Dz : DzLevel::Ldz;
  json d = {{"z", v.z}, {"dz", v.dz}, {"ldz", v.ldz}};
  if (v.density_witness) d["density_witness"] = to_json(p->algebra, *v.density_witness);
  if (v.clopen_witness) d["clopen_witness"] = v.clopen_witness->describe();
  if (v.openness_witness) d["openness_witness"] = to_json(&p->algebra, *v.openness_witness);
  return verdict(law, v.satisfies(level), d, {v.describe(p->algebra)});
}

Report check_iota(const Object& o) {
  std::vector<std::string> failures;
  std::size_t cases = 0;
  const auto roundtrip = [&](const Ideal& i) {
    ++cases;
    const PointSet u = iota(i);
    if (iota_inverse(i.owner(), u) != i) failures.push_back("iota^-1(iota(" + i.describe() + ")) differs");
  };
  if (const auto* i = std::get_if<Ideal>(&o)) {
    roundtrip(*i);
  } else if (const auto* a = std::get_if<Algebra>(&o)) {
    if (!a->is_finite()) throw InputError("iota on a whole algebra needs a finite algebra; pass an ideal instead");
    const std::vector<Element> elems = a->elements();
    std::vector<PointSet> images;
    for (const Element& g : elems) {
      const Ideal i = Ideal::principal(*a, g);
      roundtrip(i);
      images.push_back(iota(i));
    }
    for (const Element& g : elems) {
      ++cases;
      const PointSet u = stone_set(*a, g);
      if (iota(iota_inverse(*a, u)) != u) failures.push_back("iota(iota^-1(" + to_string(u) + ")) differs");
    }
    for (std::size_t x = 0; x < elems.size(); ++x) {
      for (std::size_t y = 0; y < elems.size(); ++y) {
        ++cases;
        if (a->leq(elems[x], elems[y]) != is_subset(images[x], images[y])) {
          failures.push_back("order not preserved between " + a->describe(elems[x]) + " and " + a->describe(elems[y]));
        }
      }
    }
  } else {
    wrong_input(o, "an ideal or finite algebra");
  }
  json d = {{"cases", cases}, {"failures", failures}};
  std::vector<std::string> notes = {std::to_string(cases) + " cases"};
  for (const auto& f : failures) notes.push_back(f);
  return verdict("iota", failures.empty(), d, notes);
}

Report check_coherence(const Object& o) {
  CoherenceVerdict v;
  if (const auto* s = std::get_if<SpacePresentation>(&o)) {
    v = check_EF_theta_t(*s);
  } else if (const auto* f = std::get_if<SpaceMap>(&o)) {
    v = check_EF_theta_t(*f);
  } else if (const auto* i = std::get_if<Ideal>(&o)) {
    v = check_GEp_theta_a(LbaPair(*i));
  } else if (const auto* h = std::get_if<Homomorphism>(&o)) {
    v = check_GEp_theta_a(full_lba(*h));
  } else {
    wrong_input(o, "a space, space-map, ideal or homomorphism");
  }
  std::vector<std::string> notes;
  if (!v.detail.empty()) notes.push_back(v.detail);
  return verdict("coherence", v.pass, {{"detail", v.detail}}, notes);
}

// Verdicts, roundtrips, coherence and route agreement over the catalog.
LawReport catalog_report(bool roundtrips_only) {
  LawReport report;
  const Catalog& cat = builtin_catalog();
  const auto record = [&](const std::string& law, const std::string& id, const std::function<std::string()>& body) {
    try {
      const std::string w = body();
      report.records.push_back({law, id, w.empty(), w});
    } catch (const std::exception& e) {
      report.records.push_back({law, id, false, e.what()});
    }
  };
  for (const CatalogPair& p : cat.pairs) {
    if (p.ldz) {
      record("EpE-roundtrip", p.id, [&] {
        return check_EpE(DzAlgebra::make(p.algebra, p.points, DzLevel::Ldz)) ? "" : "Ep(E(d)) != d";
      });
    }
  }
  for (const CatalogLba& l : cat.lba_pairs) {
    if (l.zlba) {
      record("EEp-roundtrip", l.id, [&] { return check_EEp(LbaPair(l.ideal)) ? "" : "E(Ep(p)) != p"; });
    }
  }
  if (roundtrips_only) return report;
  for (const CatalogPair& p : cat.pairs) {
    record("pair-verdict", p.id, [&] {
      const DzVerdict v = validate(p.algebra, p.points);
      return v.z == p.z && v.dz == p.dz && v.ldz == p.ldz ? "" : "got " + v.describe(p.algebra);
    });
  }
  for (const CatalogLba& l : cat.lba_pairs) {
    record("route-agreement", l.id, [&] {
      const ZlbaVerdict a = decide_zlba(l.ideal);
      const ZlbaVerdict b = decide_zlba_by_joins(l.ideal);
      if (a.is_lba != b.is_lba || a.is_zlba != b.is_zlba) return std::string("routes disagree");
      if (a.is_lba != l.lba || a.is_zlba != l.zlba) return std::string("verdict differs from the catalog entry");
      return std::string();
    });
    if (l.zlba) {
      record("GEp-theta-a", l.id, [&] {
        const CoherenceVerdict v = check_GEp_theta_a(LbaPair(l.ideal));
        return v.pass ? std::string() : v.detail;
      });
    }
  }
  for (const CatalogSpace& s : cat.spaces) {
    if (!s.representable) {
      record("unrepresentable-CO", s.id, [&] {
        try {
          co_algebra(s.space);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::UnrepresentableCO) return std::string();
        }
        return std::string("expected UnrepresentableCO");
      });
      continue;
    }
    record("EF-theta-t", s.id, [&] {
      const CoherenceVerdict v = check_EF_theta_t(s.space);
      return v.pass ? std::string() : v.detail;
    });
  }
  for (auto& r : report.records) {
    if (r.pass) r.witness.clear();
  }
  report.vacuous = report.records.empty();
  return report;
}

Report check(const Command& c) {
  const std::string& law = c.law;
  if (law == "functors") {
    LawSuiteOptions options;
    options.seed = c.seed;
    options.max_atoms = c.max_atoms;
    return from_records(law, run_law_suite(options));
  }
  if (law == "tarski") return from_records(law, run_tarski_suite(c.seed));
  if (law == "all") {
    LawSuiteOptions options;
    options.seed = c.seed;
    options.max_atoms = c.max_atoms;
    LawReport all = run_law_suite(options);
    for (const LawReport& part : {run_tarski_suite(c.seed), catalog_report(false)}) {
      all.records.insert(all.records.end(), part.records.begin(), part.records.end());
    }
    return from_records(law, all);
  }
  const Object o = load(c.input);
  if (law == "zlba") return check_zlba(require_ideal(o));
  if (law == "lba") {
    const LbaPair p(require_ideal(o));
    json d = {{"lba", p.is_lba()}};
    std::vector<std::string> notes;
    if (p.verdict().density_witness) {
      d["density_witness"] = to_json(p.algebra(), *p.verdict().density_witness);
      notes.push_back("nothing nonzero of the ideal below " + p.algebra().describe(*p.verdict().density_witness));
    }
    return verdict(law, p.is_lba(), d, notes);
  }
  if (law == "dense") {
    const Ideal& i = require_ideal(o);
    const DensityVerdict v = is_dense_ideal(i);
    json d = json::object();
    std::vector<std::string> notes;
    if (v.witness) {
      d["witness"] = to_json(i.owner(), *v.witness);
      notes.push_back("witness: " + i.owner().describe(*v.witness));
    }
    return verdict(law, v.dense, d, notes);
  }
  if (law == "simple") {
    const Ideal& i = require_ideal(o);
    const Ideal pc = pseudocomplement(i);
    return verdict(law, is_simple(i), {{"pseudocomplement", to_json(Object{pc})["ideal"]}},
                   {"pseudocomplement: " + pc.describe()});
  }
  if (law == "z" || law == "dz" || law == "ldz") return check_pair_level(law, o);
  if (law == "stone") {
    const CoherenceVerdict v = check_stone_isomorphism(require_pair(o, DzLevel::Dz));
    std::vector<std::string> notes;
    if (!v.detail.empty()) notes.push_back(v.detail);
    return verdict(law, v.pass, {{"detail", v.detail}}, notes);
  }
  if (law == "iota") return check_iota(o);
  if (law == "coherence") return check_coherence(o);
  throw InputError("unknown law \"" + law + "\"");
}

// ---------------------------------------------------------------------------
// roundtrip, catalog, validate

Report roundtrip(const Command& c) {
  if (c.pair != "E") throw InputError("unknown roundtrip pair \"" + c.pair + "\"; only E is available");
  if (c.input.empty()) return from_records("roundtrip-E", catalog_report(true));
  const Object o = load(c.input);
  if (std::holds_alternative<PairObject>(o)) {
    return verdict("roundtrip-E", check_EpE(require_pair(o, DzLevel::Ldz)), json::object(), {"Ep(E(A, X)) = (A, X)"});
  }
  if (const auto* i = std::get_if<Ideal>(&o)) {
    const LbaPair p(*i);
    if (!p.is_zlba()) throw Error(ErrorCode::NotZlba, i->describe() + " is not a ZLBA");
    return verdict("roundtrip-E", check_EEp(p), json::object(), {"E(Ep(A, I)) = (A, I)"});
  }
  wrong_input(o, "an ldz pair or a ZLBA ideal");
}

Report catalog() {
  const Catalog& cat = builtin_catalog();
  Report r;
  r.data["version"] = cat.version;
  r.lines.push_back("catalog version " + std::to_string(cat.version));
  r.lines.push_back("algebras:");
  for (const auto& a : cat.algebras) {
    r.data["algebras"].push_back({{"id", a.id}, {"object", to_json(a.algebra)}});
    r.lines.push_back("  " + a.id + "  " + a.algebra.describe());
  }
  r.lines.push_back("pairs:");
  for (const auto& p : cat.pairs) {
    r.data["pairs"].push_back({{"id", p.id},
                               {"object", to_json(Object{PairObject{p.algebra, p.points}})},
                               {"z", p.z},
                               {"dz", p.dz},
                               {"ldz", p.ldz}});
    r.lines.push_back("  " + p.id + "  z=" + yes_no(p.z) + " dz=" + yes_no(p.dz) + " ldz=" + yes_no(p.ldz));
  }
  r.lines.push_back("ideals:");
  for (const auto& l : cat.lba_pairs) {
    r.data["ideals"].push_back({{"id", l.id}, {"object", to_json(Object{l.ideal})}, {"lba", l.lba}, {"zlba", l.zlba}});
    r.lines.push_back("  " + l.id + "  " + l.ideal.describe() + "  lba=" + yes_no(l.lba) + " zlba=" + yes_no(l.zlba));
  }
  r.lines.push_back("spaces:");
  for (const auto& s : cat.spaces) {
    r.data["spaces"].push_back({{"id", s.id}, {"object", to_json(s.space)}, {"representable", s.representable}});
    r.lines.push_back("  " + s.id + "  " + s.space.describe() + (s.representable ? "" : "  (clopens not representable)"));
  }
  return r;
}

Report validate_input(const Command& c) {
  const Object o = load(c.input);
  Report r;
  r.data = {{"kind", kind_name(o)}, {"object", to_json(o)}};
  r.lines.push_back(std::string(kind_name(o)) + ": " + render(o));
  return r;
}

Report dispatch(const Command& c) {
  if (c.verb == "dual") return dual(c.functor, load(c.input));
  if (c.verb == "check") return check(c);
  if (c.verb == "roundtrip") return roundtrip(c);
  if (c.verb == "catalog") return catalog();
  if (c.verb == "validate") return validate_input(c);
  throw InputError("unknown verb \"" + c.verb + "\"");
}

Report failure(const std::string& kind, const std::string& message, json extra = json::object()) {
  Report r;
  r.exit_code = 2;
  r.data = {{"error", kind}, {"message", message}};
  r.data.update(extra);
  r.lines.push_back("error: " + message);
  return r;
}

}  // namespace

RunResult run(const Command& command) {
  Report r;
  try {
    r = dispatch(command);
  } catch (const ParseError& e) {
    r = failure("ParseError", e.what(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const ValidationError& e) {
    r = failure("ValidationError", e.what(), {{"invariant", e.invariant()}});
  } catch (const Error& e) {
    r = failure(std::string(to_string(e.code())), e.what());
  } catch (const InputError& e) {
    r = failure("InputError", e.what());
  }
  RunResult out;
  out.exit_code = r.exit_code;
  if (r.raw) {
    out.output = *r.raw;
  } else if (command.format == Format::Json) {
    out.output = r.data.dump() + "\n";
  } else {
    for (const auto& line : r.lines) out.output += line + "\n";
  }
  return out;
}

}  // namespace stonedual::dsl
