#include <map>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "stonedual/catalog.hpp"
#include "stonedual/error.hpp"
#include "stonedual/ideal.hpp"
#include "stonedual/stone_space.hpp"

using namespace stonedual;

namespace {

Algebra finite_n(unsigned n) {
  std::vector<std::string> labels;
  for (unsigned i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return Algebra::finite(labels);
}

const Algebra fc = Algebra::finite_cofinite();
const Algebra pq = Algebra::finite({"p", "q"});

Element fin(std::vector<Index> s) { return fc.make({Subset::finite(std::move(s))}); }
Element cof(std::vector<Index> s) { return fc.make({Subset::cofinite_except(std::move(s))}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::NotValidated;
}

}  // namespace

TEST_CASE("membership and construction") {
  const Ideal p = Ideal::principal(pq, pq.from_labels({"p"}));
  CHECK(p.contains(pq.from_labels({"p"})));
  CHECK_FALSE(p.contains(pq.from_labels({"q"})));

  const Ideal fs = Ideal::finite_support(fc, 0);
  CHECK(fs.contains(fin({0, 1})));
  CHECK_FALSE(fs.contains(fc.top()));

  const std::vector<Element> gens = {pq.from_labels({"p"}), pq.from_labels({"q"})};
  CHECK(Ideal::generated_by(pq, gens) == Ideal::principal(pq, pq.from_labels({"p", "q"})));
  CHECK(Ideal::principal(pq, pq.top()) == Ideal::full(pq));

  CHECK(code_of([] { Ideal::finite_support(Algebra::finite({"p"}), 0); }) == ErrorCode::FiniteSupportOnNonFcBlock);
  CHECK(code_of([&] { Ideal::principal(pq, fc.top()); }) == ErrorCode::ForeignElement);
}

TEST_CASE("density") {
  CHECK(is_dense_ideal(Ideal::finite_support(fc, 0)).dense);
  // Every nonzero sampled element dominates a nonzero finite-support member.
  for (const Element& a : {fin({3}), fin({0, 7}), cof({}), cof({0, 1, 2})}) {
    const Index first = a.parts[0].cofinite ? *select(a.parts[0], 0) : a.parts[0].support.front();
    CHECK(fc.leq(fin({first}), a));
  }
  const DensityVerdict v = is_dense_ideal(Ideal::principal(pq, pq.from_labels({"p"})));
  CHECK_FALSE(v.dense);
  REQUIRE(v.witness);
  CHECK(*v.witness == pq.from_labels({"q"}));
  CHECK(is_dense_ideal(Ideal::full(fc)).dense);
}

TEST_CASE("pseudocomplements") {
  const Ideal np = pseudocomplement(Ideal::principal(pq, pq.from_labels({"p"})));
  CHECK(np == Ideal::principal(pq, pq.from_labels({"q"})));
  // Oracle: the elements meeting {p} trivially.
  for (const Element& a : pq.elements()) {
    CHECK(np.contains(a) == pq.is_zero(pq.meet(a, pq.from_labels({"p"}))));
  }
  CHECK(pseudocomplement(Ideal::full(pq)) == Ideal::principal(pq, pq.bottom()));
  CHECK(pseudocomplement(Ideal::finite_support(fc, 0)) == Ideal::principal(fc, fc.bottom()));
}

TEST_CASE("simple ideals") {
  for (unsigned n = 0; n <= 3; ++n) {
    const Algebra a = finite_n(n);
    // Oracle: every ideal from brute-force enumeration is simple, and there
    // are exactly as many of them as elements.
    const auto brute = oracle::all_ideals(n);
    CHECK(brute.size() == a.cardinality());
    CHECK(simple_ideals(a).size() == brute.size());
    for (const Element& g : a.elements()) CHECK(is_simple(Ideal::principal(a, g)));
  }
  CHECK_FALSE(is_simple(Ideal::finite_support(fc, 0)));
  CHECK(is_simple(Ideal::full(fc)));
  CHECK(code_of([] { simple_ideals(fc); }) == ErrorCode::EnumerationUnsupported);
}

TEST_CASE("simple ideals of a finite algebra form a copy of it") {
  const Algebra a = finite_n(3);
  std::map<Element, Ideal> by_gen;
  for (const Element& g : a.elements()) by_gen.emplace(g, Ideal::principal(a, g));
  for (const Element& x : a.elements()) {
    for (const Element& y : a.elements()) {
      CHECK(meet(by_gen.at(x), by_gen.at(y)) == by_gen.at(a.meet(x, y)));
      CHECK(join(by_gen.at(x), by_gen.at(y)) == by_gen.at(a.join(x, y)));
    }
  }
}

TEST_CASE("LBA and ZLBA verdicts") {
  SUBCASE("full ideals") {
    for (const Algebra& a : {pq, fc, Algebra::product({Factor::finite_cofinite(), Factor::finite({"p"})})}) {
      const ZlbaVerdict v = decide_zlba(Ideal::full(a));
      CHECK(v.is_lba);
      CHECK(v.is_zlba);
    }
  }
  SUBCASE("finite-support ideal of FC(N)") {
    const Ideal fs = Ideal::finite_support(fc, 0);
    const ZlbaVerdict v = decide_zlba(fs);
    CHECK(v.is_lba);
    CHECK_FALSE(v.is_zlba);
    const ZlbaVerdict w = decide_zlba_by_joins(fs);
    CHECK(w.is_lba);
    CHECK_FALSE(w.is_zlba);
    REQUIRE(w.join_witness);
    CHECK(w.join_witness->describe() == "finite subsets of evens in block 0");

    // The refuter defeats five candidate upper bounds.
    const auto bounds = candidate_upper_bounds(*w.join_witness, 5);
    REQUIRE(bounds.size() == 5);
    for (const Element& u : bounds) {
      // u is an upper bound: it contains every even index (checked on a window).
      const auto eu = oracle::expand(u.parts[0], 64);
      for (unsigned i = 0; i < 60; i += 2) CHECK(eu.has(i));
      const auto smaller = w.join_witness->refute(u);
      REQUIRE(smaller);
      CHECK(fc.leq(*smaller, u));
      CHECK_FALSE(fc.equal(*smaller, u));
      CHECK(w.join_witness->is_upper_bound(*smaller));
      const auto es = oracle::expand(smaller->parts[0], 64);
      for (unsigned i = 0; i < 60; i += 2) CHECK(es.has(i));
    }
    // The refuter's input: from cofinite{} drop one odd index.
    const auto r = w.join_witness->refute(fc.top());
    REQUIRE(r);
    CHECK(*r == cof({1}));
    CHECK_FALSE(w.join_witness->refute(fin({0, 2})));
  }
  SUBCASE("finite algebras are complete") {
    const LbaPair p(Ideal::full(finite_n(3)));
    CHECK(p.is_zlba());
    const LbaPair q(Ideal::principal(pq, pq.from_labels({"p"})));
    CHECK_FALSE(q.is_lba());
    CHECK_FALSE(q.is_zlba());
  }
}

TEST_CASE("the two ZLBA routes agree on the catalog") {
  for (const CatalogLba& entry : builtin_catalog().lba_pairs) {
    const ZlbaVerdict a = decide_zlba(entry.ideal);
    const ZlbaVerdict b = decide_zlba_by_joins(entry.ideal);
    CHECK_MESSAGE(a.is_lba == b.is_lba, entry.id);
    CHECK_MESSAGE(a.is_zlba == b.is_zlba, entry.id);
    CHECK_MESSAGE(a.is_lba == entry.lba, entry.id);
    CHECK_MESSAGE(a.is_zlba == entry.zlba, entry.id);
  }
}

TEST_CASE("L sets") {
  CHECK(l_set(Ideal::finite_support(fc, 0)) == PointSet{{BlockSet{Subset::all(), false}}});
  CHECK(l_set(Ideal::full(pq)) == PointSet::full(pq.shape()));
  const Element g = fin({1, 4});
  CHECK(l_set(Ideal::principal(fc, g)) == stone_set(fc, g));
}

TEST_CASE("iota on worked examples") {
  const Ideal p = Ideal::principal(pq, pq.from_labels({"p"}));
  const PointSet xp = PointSet::of(pq.shape(), {Point::at(0, 0)});
  CHECK(iota(p) == xp);
  CHECK(iota_inverse(pq, xp) == p);
  CHECK(iota(Ideal::finite_support(fc, 0)) == PointSet{{BlockSet{Subset::all(), false}}});
  CHECK(is_empty(iota(Ideal::principal(fc, fc.bottom()))));
  CHECK(code_of([&] { iota_inverse(fc, PointSet{{BlockSet{Subset::none(), true}}}); }) == ErrorCode::NotOpen);
  CHECK(iota_inverse(fc, PointSet{{BlockSet{Subset::all(), false}}}) == Ideal::finite_support(fc, 0));
}

TEST_CASE("iota is an order isomorphism onto the open sets up to four atoms") {
  for (unsigned n = 0; n <= 4; ++n) {
    const Algebra a = finite_n(n);
    const auto brute = oracle::all_ideals(n);
    // Each brute-force ideal corresponds to a library ideal with the same
    // members, and iota sends it to the union of its s(a).
    std::set<oracle::Mask> images;
    for (const auto& members : brute) {
      const oracle::Mask top = *members.rbegin();
      const Ideal i = Ideal::principal(a, oracle::from_mask(a, top));
      for (const Element& e : a.elements()) REQUIRE(i.contains(e) == (members.count(oracle::to_mask(e)) == 1));
      const PointSet u = iota(i);
      REQUIRE(oracle::to_mask(u) == oracle::union_of_stone_sets(members));
      REQUIRE(iota_inverse(a, u) == i);
      images.insert(oracle::to_mask(u));
    }
    // Every open set of the discrete space is hit.
    CHECK(images.size() == (std::size_t{1} << n));
    for (const auto& x : brute) {
      for (const auto& y : brute) {
        const bool included = std::includes(y.begin(), y.end(), x.begin(), x.end());
        const auto ux = oracle::union_of_stone_sets(x);
        const auto uy = oracle::union_of_stone_sets(y);
        REQUIRE(included == ((ux & ~uy) == 0));
      }
    }
  }
}

TEST_CASE("iota agrees with L sets") {
  for (const CatalogLba& entry : builtin_catalog().lba_pairs) CHECK_MESSAGE(iota(entry.ideal) == l_set(entry.ideal), entry.id);
}

TEST_CASE("clopen algebras and compact clopens") {
  const SpacePresentation k{{SpaceBlock::one_point_compactification()}};
  CHECK(co_algebra(k) == fc);
  CHECK(ko_ideal(k) == Ideal::full(fc));
  const SpacePresentation three{{SpaceBlock::finite(3)}};
  CHECK(co_algebra(three).cardinality() == 8);
  CHECK(ko_ideal(three) == Ideal::full(co_algebra(three)));
  CHECK(code_of([] { co_algebra(SpacePresentation{{SpaceBlock::discrete_countable()}}); }) ==
        ErrorCode::UnrepresentableCO);
  for (const CatalogSpace& s : builtin_catalog().spaces) {
    if (s.representable && s.space.is_compact()) CHECK_MESSAGE(ko_ideal(s.space) == Ideal::full(co_algebra(s.space)), s.id);
  }
}

TEST_CASE("LBA morphism condition") {
  const Ideal full = Ideal::full(fc);
  const Ideal fs = Ideal::finite_support(fc, 0);
  const Homomorphism id = Homomorphism::identity(fc);
  CHECK(lba_condition(id, fs, full).holds == false);
  CHECK(lba_condition(id, full, fs).holds);
  CHECK(lba_condition(id, fs, fs).holds);
  const auto v = lba_condition(id, fs, full);
  REQUIRE(v.witness);
  CHECK(full.contains(*v.witness));
  CHECK_THROWS_AS(LbaMorphism(LbaPair(fs), LbaPair(full), id), Error);
}
