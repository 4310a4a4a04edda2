#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "stonedual/catalog.hpp"
#include "stonedual/duality.hpp"
#include "stonedual/error.hpp"
#include "stonedual/law_suite.hpp"

using namespace stonedual;

namespace {

Algebra finite_n(unsigned n) {
  std::vector<std::string> labels;
  for (unsigned i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return Algebra::finite(labels);
}

const Algebra fc = Algebra::finite_cofinite();
const SpacePresentation k_omega{{SpaceBlock::one_point_compactification()}};

PointSet fc_set(Subset principal, bool limit) { return PointSet{{BlockSet{std::move(principal), limit}}}; }
DzAlgebra whole(const Algebra& a) { return DzAlgebra::make(a, PointSet::full(a.shape()), DzLevel::Ldz); }

// Every subset of a finite Stone space, as a point set.
std::vector<PointSet> all_point_sets(const Algebra& a) {
  std::vector<PointSet> out;
  for (const Element& e : a.elements()) out.push_back(stone_set(a, e));
  return out;
}

}  // namespace

TEST_CASE("pair validation") {
  const DzVerdict whole_fc = validate(fc, PointSet::full(fc.shape()));
  CHECK(whole_fc.ldz);

  const PointSet principals = fc_set(Subset::all(), false);
  const DzVerdict v = validate(fc, principals);
  CHECK(v.z);
  CHECK_FALSE(v.dz);
  REQUIRE(v.clopen_witness);
  // The evens clopen is not the trace of any of five sampled elements.
  const std::vector<Element> sample = {fc.bottom(), fc.top(), fc.make({Subset::finite({0, 2, 4, 6})}),
                                       fc.make({Subset::cofinite_except({1, 3, 5})}),
                                       fc.make({Subset::cofinite_except({1})})};
  for (const Element& a : sample) {
    const Index i = first_mismatch(fc, principals, a, *v.clopen_witness);
    const bool in_trace = stone_trace(fc, principals, a).contains(Point::at(0, i));
    CHECK(in_trace != v.clopen_witness->contains(i));
  }
  CHECK(validate(finite_n(3), PointSet::full(finite_n(3).shape())).ldz);
  CHECK_THROWS_AS(DzAlgebra::make(fc, principals, DzLevel::Dz), Error);
}

TEST_CASE("validation levels relate to density and openness") {
  for (unsigned n = 0; n <= 3; ++n) {
    const Algebra a = finite_n(n);
    for (const PointSet& x : all_point_sets(a)) {
      const DzVerdict v = validate(a, x);
      CHECK(v.z == is_dense(a.shape(), x));
      // Oracle for density: every nonzero element has a point of x.
      bool dense = true;
      for (const Element& e : a.elements()) {
        if (!a.is_zero(e) && is_empty(stone_trace(a, x, e))) dense = false;
      }
      CHECK(v.z == dense);
      if (v.ldz) CHECK((is_open(a.shape(), x) && v.dz));
    }
  }
  for (const Subset& s : {Subset::all(), Subset::none(), Subset::finite({0, 1}), Subset::cofinite_except({3})}) {
    for (bool limit : {false, true}) {
      const PointSet x = fc_set(s, limit);
      const DzVerdict v = validate(fc, x);
      CHECK(v.z == is_dense(fc.shape(), x));
      if (v.ldz) CHECK((is_open(fc.shape(), x) && v.dz));
    }
  }
}

TEST_CASE("F on objects and morphisms") {
  const SpacePresentation two{{SpaceBlock::finite(2)}};
  const DzAlgebra f2 = clopen_dual(two);
  CHECK(f2.algebra().cardinality() == 4);
  CHECK(f2.points() == PointSet::full(f2.algebra().shape()));
  CHECK(f2.level() == DzLevel::Ldz);
  const DzAlgebra fk = clopen_dual(k_omega);
  CHECK(fk.algebra() == fc);
  CHECK(fk.points() == PointSet::full(fc.shape()));
  CHECK(fk.level() == DzLevel::Ldz);
  CHECK(clopen_dual(SpaceMap::identity(k_omega)) == DzMorphism::identity(fk));
  CHECK_THROWS_AS(clopen_dual(SpacePresentation{{SpaceBlock::discrete_countable()}}), Error);
}

TEST_CASE("G on objects and morphisms") {
  for (const CatalogSpace& s : builtin_catalog().spaces) {
    if (!s.representable) continue;
    CHECK_MESSAGE(underlying_space(clopen_dual(s.space)).space == s.space, s.id);
  }
  CHECK(underlying_space(whole(fc)).space == k_omega);
  const DzAlgebra d = whole(finite_n(2));
  CHECK(underlying_map(DzMorphism::identity(d)) == SpaceMap::identity(underlying_space(d).space));
}

TEST_CASE("E and Ep") {
  CHECK(to_lba(whole(fc)).ideal() == Ideal::full(fc));
  CHECK(to_lba(whole(finite_n(3))).ideal() == Ideal::full(finite_n(3)));
  for (const CatalogPair& p : builtin_catalog().pairs) {
    if (!p.ldz) continue;
    CHECK_MESSAGE(to_lba(DzAlgebra::make(p.algebra, p.points, DzLevel::Ldz)).is_zlba(), p.id);
  }
  CHECK(to_ldz(LbaPair(Ideal::full(fc))) == whole(fc));
  CHECK(to_ldz(LbaPair(Ideal::full(finite_n(2)))) == whole(finite_n(2)));
  for (const CatalogLba& l : builtin_catalog().lba_pairs) {
    if (!l.zlba) continue;
    CHECK_MESSAGE(to_ldz(LbaPair(l.ideal)).points() == l_set(l.ideal), l.id);
  }
  CHECK_THROWS_AS(to_ldz(LbaPair(Ideal::finite_support(fc, 0))), Error);
}

TEST_CASE("E and Ep are mutually inverse") {
  CHECK(check_EpE(whole(fc)));
  CHECK(check_EEp(LbaPair(Ideal::full(finite_n(2)))));
  for (unsigned n = 0; n <= 3; ++n) {
    const Algebra a = finite_n(n);
    std::size_t ldz = 0;
    for (const PointSet& x : all_point_sets(a)) {
      if (!validate(a, x).ldz) continue;
      ++ldz;
      CHECK(check_EpE(DzAlgebra::make(a, x, DzLevel::Ldz)));
    }
    CHECK(ldz == 1);  // density forces X = S(A)
    for (const Element& g : a.elements()) {
      const LbaPair p(Ideal::principal(a, g));
      if (p.is_zlba()) CHECK(check_EEp(p));
    }
  }
}

TEST_CASE("theta functors") {
  CHECK(theta_t(k_omega).ideal() == Ideal::full(fc));
  CHECK(theta_a(LbaPair(Ideal::full(fc))).space == k_omega);
  CHECK_THROWS_AS(theta_t(SpacePresentation{{SpaceBlock::discrete_countable()}}), Error);
  CHECK_THROWS_AS(theta_a(LbaPair(Ideal::finite_support(fc, 0))), Error);
}

TEST_CASE("coherence") {
  const CoherenceVerdict k = check_EF_theta_t(k_omega);
  CHECK(k.pass);
  CHECK(check_EF_theta_t(SpacePresentation{{SpaceBlock::finite(3)}}).pass);
  CHECK(check_GEp_theta_a(LbaPair(Ideal::full(finite_n(3)))).pass);
  CHECK(underlying_space(to_ldz(LbaPair(Ideal::full(finite_n(3))))).points == PointSet::full(finite_n(3).shape()));
}

TEST_CASE("mz maps") {
  SUBCASE("Stone map of a finite algebra") {
    const MzMap m = to_mz_map(whole(finite_n(2)));
    CHECK(m.levels().z_map);
    CHECK(m.levels().mz_map);
    CHECK(m.levels().lmz_map);
  }
  SUBCASE("Stone map of FC(N)") {
    const MzMap m = to_mz_map(whole(fc));
    CHECK(m.levels().lmz_map);
    CHECK(is_open(fc.shape(), m.x_alpha()));
  }
  SUBCASE("Gp after Fp is isomorphic to the input") {
    for (const CatalogPair& p : builtin_catalog().pairs) {
      if (!p.dz) continue;
      const DzAlgebra d = DzAlgebra::make(p.algebra, p.points, DzLevel::Dz);
      CHECK_MESSAGE(check_stone_isomorphism(d).pass, p.id);
      CHECK_MESSAGE(to_mz_map(d).levels().lmz_map == p.ldz, p.id);
    }
  }
  SUBCASE("user tables") {
    const Algebra pq = Algebra::finite({"p", "q"});
    const Algebra one = powerset(1);
    // alpha(a) = {0} iff p in a: the dual sends the only point to x_p.
    std::vector<BlockRule> rules(1);
    rules[0].table.emplace(0, Point::at(0, 0));
    const Homomorphism alpha(pq, one, PointMap(one.shape(), pq.shape(), rules));
    const MapLevels l = validate_map_levels(alpha);
    CHECK_FALSE(l.injective);  // alpha({q}) = alpha(0)
    CHECK(l.atoms_are_meets);
    CHECK_FALSE(l.z_map);
    CHECK_FALSE(l.mz_map);
    CHECK_FALSE(validate(pq, PointSet::of(pq.shape(), {Point::at(0, 0)})).z);

    const MapLevels s = validate_map_levels(Homomorphism::identity(pq));
    CHECK(s.z_map);
    CHECK(s.mz_map);
    CHECK(s.lmz_map);
    CHECK_THROWS_AS(validate_map_levels(Homomorphism::identity(fc)), Error);
  }
}

TEST_CASE("Tarski functors") {
  const Algebra p2 = powerset(2);
  const auto atoms = atoms_of(p2);
  REQUIRE(atoms.size() == 2);
  CHECK(oracle::to_mask(atoms[0]) == 1);
  CHECK(oracle::to_mask(atoms[1]) == 2);
  // f: {a} -> {1, 2}, a |-> 2 (indices 0 and 1).
  const std::vector<Index> f = {1};
  CHECK(atoms_map(powerset_map(f, 2)) == std::vector<Index>{oracle::at_of_preimage({1}, 2, 0)});
  CHECK(atoms_map(powerset_map(f, 2)) == std::vector<Index>{1});

  const MzMap m = to_mz_map(whole(finite_n(2)));
  const MBoolMorphism id = MBoolMorphism::identity(m);
  const SpaceMap fs = f_sigma(id);
  CHECK(fs == SpaceMap::identity(fs.source()));
}

TEST_CASE("morphism validation") {
  const DzAlgebra d = whole(finite_n(2));
  std::vector<BlockRule> swap(1);
  swap[0].table.emplace(0, Point::at(0, 1));
  swap[0].table.emplace(1, Point::at(0, 0));
  const PointMap f(d.algebra().shape(), d.algebra().shape(), swap);
  CHECK_THROWS_AS(DzMorphism::make(d, d, Homomorphism::identity(d.algebra()), f), Error);
  const DzMorphism bad = DzMorphism::unchecked(d, d, Homomorphism::identity(d.algebra()), f);
  CHECK(dz_violation(bad) == Point::at(0, 0));
  CHECK_FALSE(dz_violation(DzMorphism::identity(d)));
}

TEST_CASE("law suite") {
  SUBCASE("seed 0 passes") {
    const LawReport r = run_law_suite({});
    CHECK_FALSE(r.vacuous);
    CHECK(r.records.size() > 1000);
    CHECK(r.all_pass());
  }
  SUBCASE("an injected mutant is reported with the violating point") {
    LawSuiteOptions o;
    o.inject_mutant = true;
    o.fc_morphisms = 10;
    o.max_atoms = 1;
    const LawReport r = run_law_suite(o);
    CHECK(r.failures() == 1);
    for (const LawRecord& rec : r.records) {
      if (rec.pass) continue;
      CHECK(rec.case_id == "mutant");
      CHECK(rec.witness.find("x' = ") != std::string::npos);
    }
  }
  SUBCASE("an empty catalog is a vacuous pass") {
    LawSuiteOptions o;
    o.empty_catalog = true;
    const LawReport r = run_law_suite(o);
    CHECK(r.vacuous);
    CHECK(r.records.empty());
    CHECK(r.all_pass());
  }
  SUBCASE("reports are JSON lines") {
    LawSuiteOptions o;
    o.max_atoms = 1;
    o.fc_morphisms = 2;
    const std::string lines = run_law_suite(o).to_json_lines();
    CHECK(lines.find("{\"case\":") == 0);
    CHECK(lines.back() == '\n');
  }
  SUBCASE("Tarski suite") {
    const LawReport r = run_tarski_suite(7, 500, 6);
    CHECK(r.records.size() == 1000);
    CHECK(r.all_pass());
  }
}

TEST_CASE("shrinking drops exceptions that are not needed for the failure") {
  const Shape s = fc.shape();
  std::vector<BlockRule> rules(1);
  rules[0].fallback = IdentityDefault{0};
  rules[0].table.emplace(0, Point::at(0, 5));
  rules[0].table.emplace(2, Point::at(0, 7));
  rules[0].table.emplace(4, Point::limit(0));
  const PointMap big(s, s, rules);
  // Fails whenever 2 is moved.
  const PointMap small = shrink(big, [](const PointMap& f) { return f(Point::at(0, 2)) != Point::at(0, 2); });
  CHECK(small.rules()[0].table.size() == 1);
  CHECK(small(Point::at(0, 2)) == Point::at(0, 7));
}

TEST_CASE("random point maps stay in the exception-table class") {
  std::mt19937_64 rng(3);
  const Shape src = {Universe::naturals(), Universe::finite(2)};
  const Shape tgt = {Universe::finite(3), Universe::naturals()};
  for (int i = 0; i < 100; ++i) {
    const PointMap f = random_point_map(src, tgt, rng);
    // Continuity: preimages of open sets are open.
    for (const PointSet& u : {PointSet{{BlockSet{Subset::finite({0}), false}, BlockSet{Subset::cofinite_except({2}), true}}},
                              PointSet{{BlockSet{Subset::finite({1, 2}), false}, BlockSet{Subset::finite({4}), false}}}}) {
      CHECK(is_open(src, f.preimage(u)));
    }
  }
}
