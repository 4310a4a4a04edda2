#include "stonedual/law_suite.hpp"

#include <optional>
#include <sstream>

#include "json.hpp"

#include "stonedual/duality.hpp"
#include "stonedual/error.hpp"

namespace stonedual {

bool LawReport::all_pass() const noexcept { return failures() == 0; }

std::size_t LawReport::failures() const noexcept {
  std::size_t n = 0;
  for (const LawRecord& r : records) n += r.pass ? 0 : 1;
  return n;
}

std::string LawReport::to_json_lines() const {
  std::string out;
  for (const LawRecord& r : records) {
    nlohmann::json line{{"law", r.law}, {"case", r.case_id}, {"pass", r.pass}};
    line["witness"] = r.witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.witness);
    out += line.dump() + '\n';
  }
  return out;
}

PointMap random_point_map(const Shape& source, const Shape& target, std::mt19937_64& rng) {
  std::vector<Index> inhabited;
  std::vector<Index> infinite;
  for (Index b = 0; b < target.size(); ++b) {
    if (target[b].is_infinite() || target[b].size() > 0) inhabited.push_back(b);
    if (target[b].is_infinite()) infinite.push_back(b);
  }
  auto pick = [&](const std::vector<Index>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  auto random_point = [&]() {
    const Index b = pick(inhabited);
    if (!target[b].is_infinite()) return Point::at(b, std::uniform_int_distribution<Index>(0, target[b].size() - 1)(rng));
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) return Point::limit(b);
    return Point::at(b, std::uniform_int_distribution<Index>(0, 9)(rng));
  };
  std::vector<BlockRule> rules(source.size());
  for (Index k = 0; k < source.size(); ++k) {
    if (!source[k].is_infinite()) {
      for (Index i = 0; i < source[k].size(); ++i) rules[k].table.emplace(i, random_point());
      continue;
    }
    if (!infinite.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      rules[k].fallback = IdentityDefault{pick(infinite)};
    } else {
      rules[k].fallback = ConstantDefault{random_point()};
    }
    const int exceptions = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int e = 0; e < exceptions; ++e) {
      rules[k].table.emplace(std::uniform_int_distribution<Index>(0, 7)(rng), random_point());
    }
  }
  return PointMap(source, target, std::move(rules));
}

PointMap shrink(const PointMap& map, const std::function<bool(const PointMap&)>& fails) {
  PointMap current = map;
  bool progress = true;
  while (progress) {
    progress = false;
    for (Index k = 0; k < current.source().size() && !progress; ++k) {
      if (!current.source()[k].is_infinite()) continue;  // finite tables cannot lose entries
      for (const auto& entry : current.rules()[k].table) {
        std::vector<BlockRule> rules = current.rules();
        rules[k].table.erase(entry.first);
        PointMap smaller(current.source(), current.target(), std::move(rules));
        if (fails(smaller)) {
          current = std::move(smaller);
          progress = true;
          break;
        }
      }
    }
  }
  return current;
}

namespace {

std::string describe_map(const PointMap& f) {
  std::ostringstream out;
  for (std::size_t k = 0; k < f.rules().size(); ++k) {
    if (k) out << "; ";
    out << "block " << k << ":";
    for (const auto& [i, p] : f.rules()[k].table) out << ' ' << i << "->" << to_string(p);
    if (const auto& d = f.rules()[k].fallback) {
      if (const auto* c = std::get_if<ConstantDefault>(&*d)) {
        out << " else ->" << to_string(c->target);
      } else {
        out << " else identity into block " << std::get<IdentityDefault>(*d).block;
      }
    }
  }
  return out.str();
}

using Verdict = std::optional<std::string>;  // nullopt: pass

Verdict expect(bool ok, const std::string& what) { return ok ? Verdict{} : Verdict{what}; }

class Recorder {
 public:
  explicit Recorder(LawReport& report) : report_(report) {}

  void check(const std::string& law, const std::string& case_id, const std::function<Verdict()>& body) {
    try {
      Verdict v = body();
      report_.records.push_back({law, case_id, !v.has_value(), v.value_or("")});
    } catch (const Error& e) {
      report_.records.push_back({law, case_id, false, e.what()});
    }
  }

 private:
  LawReport& report_;
};

// Laws on a single pair object d = (A, S(A)).
void object_laws(Recorder& rec, const DzAlgebra& d, const std::string& id) {
  rec.check("G-identity", id, [&] {
    return expect(underlying_map(DzMorphism::identity(d)) == SpaceMap::identity(underlying_space(d).space),
                  "G(id) is not the identity");
  });
  rec.check("E-identity", id, [&] {
    return expect(to_lba(DzMorphism::identity(d)) == LbaMorphism::identity(to_lba(d)), "E(id) is not the identity");
  });
  rec.check("Ep-identity", id, [&] {
    const LbaPair p = to_lba(d);
    return expect(to_ldz(LbaMorphism::identity(p)) == DzMorphism::identity(to_ldz(p)), "Ep(id) is not the identity");
  });
  rec.check("Fp-identity", id, [&] {
    return expect(to_mz_map(DzMorphism::identity(d)) == MBoolMorphism::identity(to_mz_map(d)),
                  "Fp(id) is not the identity");
  });
  rec.check("Gp-identity", id, [&] {
    const MzMap a = to_mz_map(d);
    return expect(from_mz_map(MBoolMorphism::identity(a)) == DzMorphism::identity(from_mz_map(a)),
                  "Gp(id) is not the identity");
  });
  rec.check("theta-a-identity", id, [&] {
    const LbaPair p = to_lba(d);
    return expect(theta_a(LbaMorphism::identity(p)) == SpaceMap::identity(theta_a(p).space),
                  "theta_a(id) is not the identity");
  });
}

// Composition laws for m2 after m1, both built from their duals.
Verdict composition_law(const std::string& law, const DzMorphism& m1, const DzMorphism& m2) {
  const DzMorphism both = compose(m2, m1);
  if (law == "dza-condition") {
    for (const DzMorphism* m : {&m1, &m2, &both}) {
      if (auto bad = dz_violation(*m)) return "x' = " + to_string(*bad);
    }
    return {};
  }
  if (law == "G-composition") {
    return expect(underlying_map(both) == compose(underlying_map(m1), underlying_map(m2)),
                  "G(m2 o m1) != G(m1) o G(m2)");
  }
  if (law == "E-composition") {
    return expect(to_lba(both) == compose(to_lba(m2), to_lba(m1)), "E(m2 o m1) != E(m2) o E(m1)");
  }
  if (law == "Ep-composition") {
    const LbaMorphism e1 = to_lba(m1);
    const LbaMorphism e2 = to_lba(m2);
    return expect(to_ldz(compose(e2, e1)) == compose(to_ldz(e2), to_ldz(e1)), "Ep(e2 o e1) != Ep(e2) o Ep(e1)");
  }
  if (law == "Fp-composition") {
    return expect(to_mz_map(both) == compose(to_mz_map(m2), to_mz_map(m1)), "Fp(m2 o m1) != Fp(m2) o Fp(m1)");
  }
  if (law == "Gp-composition") {
    const MBoolMorphism s1 = to_mz_map(m1);
    const MBoolMorphism s2 = to_mz_map(m2);
    return expect(from_mz_map(compose(s2, s1)) == compose(from_mz_map(s2), from_mz_map(s1)),
                  "Gp(s2 o s1) != Gp(s2) o Gp(s1)");
  }
  if (law == "theta-a-composition") {
    const LbaMorphism e1 = to_lba(m1);
    const LbaMorphism e2 = to_lba(m2);
    return expect(theta_a(compose(e2, e1)) == compose(theta_a(e1), theta_a(e2)),
                  "theta_a(e2 o e1) != theta_a(e1) o theta_a(e2)");
  }
  throw Error(ErrorCode::NotValidated, "unknown law " + law);
}

const std::vector<std::string> kMorphismLaws{"dza-condition",  "G-composition",  "E-composition",
                                             "Ep-composition", "Fp-composition", "Gp-composition",
                                             "theta-a-composition"};

void space_object_laws(Recorder& rec, const SpacePresentation& x, const std::string& id) {
  rec.check("F-identity", id, [&] {
    return expect(clopen_dual(SpaceMap::identity(x)) == DzMorphism::identity(clopen_dual(x)),
                  "F(id) is not the identity");
  });
  rec.check("theta-t-identity", id, [&] {
    return expect(theta_t(SpaceMap::identity(x)) == LbaMorphism::identity(theta_t(x)),
                  "theta_t(id) is not the identity");
  });
}

Verdict space_law(const std::string& law, const SpaceMap& f, const SpaceMap& g) {
  const SpaceMap both = compose(g, f);
  if (law == "F-composition") {
    return expect(clopen_dual(both) == compose(clopen_dual(f), clopen_dual(g)), "F(g o f) != F(f) o F(g)");
  }
  return expect(theta_t(both) == compose(theta_t(f), theta_t(g)), "theta_t(g o f) != theta_t(f) o theta_t(g)");
}

const std::vector<std::string> kSpaceLaws{"F-composition", "theta-t-composition"};

DzAlgebra whole(const Algebra& a) { return DzAlgebra::make(a, PointSet::full(a.shape()), DzLevel::Ldz); }

DzMorphism from_dual(const DzAlgebra& source, const DzAlgebra& target, const PointMap& dual) {
  return DzMorphism::make(source, target, Homomorphism(source.algebra(), target.algebra(), dual), dual);
}

void finite_suite(Recorder& rec, Index max_atoms) {
  const std::vector<std::string> labels{"p", "q", "r", "s", "t", "u"};
  std::vector<DzAlgebra> objects;
  for (Index n = 0; n <= max_atoms && n <= labels.size(); ++n) {
    objects.push_back(whole(Algebra::finite(std::vector<std::string>(labels.begin(), labels.begin() + n))));
  }
  for (const DzAlgebra& d : objects) object_laws(rec, d, d.algebra().describe());

  // homs[i][j]: every morphism objects[i] -> objects[j].
  std::vector<std::vector<std::vector<DzMorphism>>> homs(objects.size(),
                                                         std::vector<std::vector<DzMorphism>>(objects.size()));
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = 0; j < objects.size(); ++j) {
      for (const Homomorphism& h : all_homomorphisms(objects[i].algebra(), objects[j].algebra())) {
        homs[i][j].push_back(DzMorphism::unchecked(objects[i], objects[j], h, h.dual()));
      }
    }
  }
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = 0; j < objects.size(); ++j) {
      for (std::size_t k = 0; k < objects.size(); ++k) {
        for (std::size_t a = 0; a < homs[i][j].size(); ++a) {
          for (std::size_t b = 0; b < homs[j][k].size(); ++b) {
            std::ostringstream id;
            id << "finite:" << i << "->" << j << "->" << k << "#" << a << "." << b;
            for (const std::string& law : kMorphismLaws) {
              rec.check(law, id.str(), [&] { return composition_law(law, homs[i][j][a], homs[j][k][b]); });
            }
          }
        }
      }
    }
  }

  // Finite discrete spaces and every function between them.
  std::vector<SpacePresentation> spaces;
  for (Index n = 0; n <= max_atoms; ++n) spaces.push_back({{SpaceBlock::finite(n)}});
  for (const SpacePresentation& x : spaces) space_object_laws(rec, x, x.describe());
  auto all_maps = [](const SpacePresentation& x, const SpacePresentation& y) {
    std::vector<SpaceMap> out;
    const Index n = x.blocks[0].points;
    const Index m = y.blocks[0].points;
    if (m == 0 && n > 0) return out;
    std::vector<Index> f(n, 0);
    while (true) {
      std::vector<BlockRule> rules(1);
      for (Index i = 0; i < n; ++i) rules[0].table.emplace(i, Point::at(0, f[i]));
      out.emplace_back(x, y, PointMap(x.shape(), y.shape(), std::move(rules)));
      Index pos = 0;
      while (pos < n && ++f[pos] == m) f[pos++] = 0;
      if (pos == n) break;
    }
    return out;
  };
  for (const SpacePresentation& x : spaces) {
    for (const SpacePresentation& y : spaces) {
      for (const SpacePresentation& z : spaces) {
        const auto fs = all_maps(x, y);
        const auto gs = all_maps(y, z);
        for (std::size_t a = 0; a < fs.size(); ++a) {
          for (std::size_t b = 0; b < gs.size(); ++b) {
            const std::string id = "spaces:" + x.describe() + y.describe() + z.describe() + "#" +
                                   std::to_string(a) + "." + std::to_string(b);
            for (const std::string& law : kSpaceLaws) {
              rec.check(law, id, [&] { return space_law(law, fs[a], gs[b]); });
            }
          }
        }
      }
    }
  }
}

void fc_suite(Recorder& rec, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  const std::vector<DzAlgebra> objects{
      whole(Algebra::finite_cofinite()),
      whole(Algebra::product({Factor::finite_cofinite(), Factor::finite({"p", "q"})})),
      whole(Algebra::product({Factor::finite_cofinite(), Factor::finite_cofinite()})),
  };
  for (const DzAlgebra& d : objects) object_laws(rec, d, d.algebra().describe());
  const std::vector<SpacePresentation> spaces{
      {{SpaceBlock::one_point_compactification()}},
      {{SpaceBlock::finite(2), SpaceBlock::one_point_compactification()}},
      {{SpaceBlock::one_point_compactification(), SpaceBlock::one_point_compactification()}},
  };
  for (const SpacePresentation& x : spaces) space_object_laws(rec, x, x.describe());

  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (std::size_t c = 0; c < count; ++c) {
    const std::string id = "fc#" + std::to_string(c);
    const DzAlgebra& a = objects[pick(objects.size())];
    const DzAlgebra& b = objects[pick(objects.size())];
    const DzAlgebra& d = objects[pick(objects.size())];
    const PointMap dual1 = random_point_map(b.algebra().shape(), a.algebra().shape(), rng);
    const PointMap dual2 = random_point_map(d.algebra().shape(), b.algebra().shape(), rng);
    for (const std::string& law : kMorphismLaws) {
      auto run = [&](const PointMap& f1, const PointMap& f2) {
        return composition_law(law, from_dual(a, b, f1), from_dual(b, d, f2));
      };
      auto fails = [&](const PointMap& f1, const PointMap& f2) {
        try {
          return run(f1, f2).has_value();
        } catch (const Error&) {
          return true;
        }
      };
      rec.check(law, id, [&]() -> Verdict {
        Verdict v;
        try {
          v = run(dual1, dual2);
        } catch (const Error& e) {
          v = e.what();
        }
        if (!v) return v;
        const PointMap s1 = shrink(dual1, [&](const PointMap& f) { return fails(f, dual2); });
        const PointMap s2 = shrink(dual2, [&](const PointMap& f) { return fails(s1, f); });
        return *v + " [shrunk: phi1 dual " + describe_map(s1) + " | phi2 dual " + describe_map(s2) + "]";
      });
    }

    const SpacePresentation& x = spaces[pick(spaces.size())];
    const SpacePresentation& y = spaces[pick(spaces.size())];
    const SpacePresentation& z = spaces[pick(spaces.size())];
    const SpaceMap f(x, y, random_point_map(x.shape(), y.shape(), rng));
    const SpaceMap g(y, z, random_point_map(y.shape(), z.shape(), rng));
    for (const std::string& law : kSpaceLaws) {
      rec.check(law, id, [&] { return space_law(law, f, g); });
    }
  }
}

void mutant_case(Recorder& rec) {
  const DzAlgebra d = whole(Algebra::finite_cofinite());
  const Homomorphism phi = Homomorphism::identity(d.algebra());
  std::vector<BlockRule> rules = PointMap::identity(d.algebra().shape()).rules();
  rules[0].table.emplace(0, Point::at(0, 1));
  const PointMap broken(d.algebra().shape(), d.algebra().shape(), std::move(rules));
  const DzMorphism mutant = DzMorphism::unchecked(d, d, phi, broken);
  rec.check("dza-condition", "mutant", [&]() -> Verdict {
    auto bad = dz_violation(mutant);
    if (!bad) return {};
    return "x' = " + to_string(*bad) + ": f(x') = " + to_string(broken(*bad)) + " but x' o phi = " +
           to_string(phi.dual()(*bad));
  });
}

}  // namespace

LawReport run_law_suite(const LawSuiteOptions& options) {
  LawReport report;
  if (options.empty_catalog) {
    report.vacuous = true;
    return report;
  }
  Recorder rec(report);
  finite_suite(rec, options.max_atoms);
  fc_suite(rec, options.seed, options.fc_morphisms);
  if (options.inject_mutant) mutant_case(rec);
  report.vacuous = report.records.empty();
  return report;
}

LawReport run_tarski_suite(std::uint64_t seed, std::size_t cases, Index max_size) {
  LawReport report;
  Recorder rec(report);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> size(0, max_size);
  for (std::size_t c = 0; c < cases; ++c) {
    Index n = size(rng);
    Index m = size(rng);
    if (n > 0 && m == 0) m = 1;
    std::vector<Index> f(n);
    for (Index& v : f) v = std::uniform_int_distribution<Index>(0, m - 1)(rng);
    std::ostringstream id;
    id << "tarski#" << c << ":" << n << "->" << m;
    rec.check("At-P-objects", id.str(), [&] {
      const Algebra p = powerset(n);
      const std::vector<Element> atoms = atoms_of(p);
      if (atoms.size() != n) return expect(false, "P(X) has " + std::to_string(atoms.size()) + " atoms");
      for (Index i = 0; i < n; ++i) {
        if (atoms[i] != p.from_labels({std::to_string(i)})) return expect(false, "atom " + std::to_string(i) + " is not {" + std::to_string(i) + "}");
      }
      return Verdict{};
    });
    rec.check("At-P-morphisms", id.str(), [&] {
      const std::vector<Index> back = atoms_map(powerset_map(f, m));
      for (Index i = 0; i < n; ++i) {
        if (back[i] != f[i]) {
          return expect(false, "At(P(f))(" + std::to_string(i) + ") = " + std::to_string(back[i]) + " but f(" +
                                    std::to_string(i) + ") = " + std::to_string(f[i]));
        }
      }
      return expect(back.size() == n, "At(P(f)) has the wrong domain");
    });
  }
  report.vacuous = report.records.empty();
  return report;
}

}  // namespace stonedual
