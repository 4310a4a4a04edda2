#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "stonedual/algebra.hpp"
#include "stonedual/error.hpp"
#include "stonedual/space.hpp"
#include "stonedual/stone_space.hpp"

using namespace stonedual;

namespace {

Algebra finite_n(unsigned n) {
  std::vector<std::string> labels;
  for (unsigned i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return Algebra::finite(labels);
}

const Algebra fc = Algebra::finite_cofinite();

PointSet fc_set(Subset principal, bool limit) { return PointSet{{BlockSet{std::move(principal), limit}}}; }

}  // namespace

TEST_CASE("characters are exactly the homomorphisms into 2") {
  for (unsigned n = 0; n <= 3; ++n) {
    const Algebra a = finite_n(n);
    const auto elems = a.elements();
    std::set<std::vector<bool>> from_library;
    for (const Character& x : characters(a, 0)) {
      std::vector<bool> table(std::size_t{1} << n);
      for (const Element& e : elems) table[oracle::to_mask(e)] = evaluate(a, x, e);
      from_library.insert(table);
    }
    const auto brute = oracle::homs_to_two(n);
    CHECK(from_library == std::set<std::vector<bool>>(brute.begin(), brute.end()));
    CHECK(characters(a, 0).size() == n);
  }
}

TEST_CASE("characters of FC(N) and the degenerate algebra") {
  const auto xs = characters(fc, 2);
  CHECK(xs == std::vector<Character>{Point::at(0, 0), Point::at(0, 1), Point::limit(0)});
  // Each one is a homomorphism on a sample, checked on explicit sets.
  const std::vector<Subset> sample = {Subset::none(), Subset::all(), Subset::finite({0, 3}), Subset::cofinite_except({1}),
                                      Subset::finite({1}), Subset::cofinite_except({0, 2, 5})};
  for (const Character& x : xs) {
    for (const Subset& s : sample) {
      for (const Subset& t : sample) {
        const Element a = fc.make({s});
        const Element b = fc.make({t});
        const auto ea = oracle::expand(s, 8);
        const auto eb = oracle::expand(t, 8);
        CHECK(evaluate(fc, x, fc.meet(a, b)) == (oracle::evaluate(ea, x) && oracle::evaluate(eb, x)));
        CHECK(evaluate(fc, x, fc.join(a, b)) == (oracle::evaluate(ea, x) || oracle::evaluate(eb, x)));
        CHECK(evaluate(fc, x, fc.complement(a)) == !oracle::evaluate(ea, x));
      }
    }
  }
  CHECK(characters(Algebra::finite({}), 4).empty());
}

TEST_CASE("character evaluation") {
  CHECK(evaluate(fc, Point::at(0, 0), fc.make({Subset::finite({0, 1})})));
  CHECK_FALSE(evaluate(fc, Point::limit(0), fc.make({Subset::finite({0, 1})})));
  CHECK(evaluate(fc, Point::limit(0), fc.make({Subset::cofinite_except({5})})));
  CHECK_THROWS_AS(evaluate(Algebra::finite({"p"}), Point::at(0, 3), Algebra::finite({"p"}).top()), Error);
}

TEST_CASE("the Stone map agrees with character filtering") {
  for (unsigned n = 0; n <= 5; ++n) {
    const Algebra a = finite_n(n);
    for (const Element& e : a.elements()) {
      oracle::Mask expected = 0;
      for (const Character& x : characters(a, 0)) {
        if (evaluate(a, x, e)) expected |= oracle::Mask{1} << *x.index;
      }
      REQUIRE(oracle::to_mask(stone_set(a, e)) == expected);
      REQUIRE(expected == oracle::to_mask(e));
    }
  }
  const Algebra pqr = Algebra::finite({"p", "q", "r"});
  CHECK(stone_set(pqr, pqr.from_labels({"p", "q"})) == PointSet::of(pqr.shape(), {Point::at(0, 0), Point::at(0, 1)}));
  CHECK(stone_set(fc, fc.make({Subset::finite({0, 1})})) == fc_set(Subset::finite({0, 1}), false));
  CHECK(stone_set(fc, fc.top()) == PointSet::full(fc.shape()));
}

TEST_CASE("traces") {
  const Element a = fc.make({Subset::finite({0, 4})});
  CHECK(stone_trace(fc, PointSet::full(fc.shape()), a) == stone_set(fc, a));
  const PointSet principals = fc_set(Subset::all(), false);
  CHECK(stone_trace(fc, principals, fc.top()) == fc_set(Subset::all(), false));
  CHECK(stone_trace(fc, PointSet::empty(fc.shape()), fc.top()) == PointSet::empty(fc.shape()));
}

TEST_CASE("topology of S(FC(N))") {
  const Shape& s = fc.shape();
  const PointSet principals = fc_set(Subset::all(), false);
  CHECK(is_open(s, principals));
  CHECK(is_dense(s, principals));
  CHECK_FALSE(is_compact(s, principals));

  const PointSet free = fc_set(Subset::none(), true);
  CHECK_FALSE(is_open(s, free));
  CHECK(is_closed(s, free));
  CHECK(is_compact(s, free));

  const PointSet all = PointSet::full(s);
  CHECK(is_open(s, all));
  CHECK(is_closed(s, all));
  CHECK(is_compact(s, all));
  CHECK(is_dense(s, all));

  CHECK(closure(s, principals) == all);
  CHECK(interior(s, fc_set(Subset::finite({1}), true)) == fc_set(Subset::finite({1}), false));
}

TEST_CASE("clopen membership in subspaces") {
  const Shape& s = fc.shape();
  const PointSet all = PointSet::full(s);
  CHECK(is_clopen_in(s, all, all));
  CHECK_FALSE(is_clopen_in(s, all, fc_set(Subset::all(), false)));
  const PointSet principals = fc_set(Subset::all(), false);
  CHECK(is_clopen_in(s, principals, fc_set(Subset::cofinite_except({2, 3}), false)));
  CHECK_THROWS_AS(is_clopen_in(s, principals, all), Error);
}

TEST_CASE("hat maps") {
  SUBCASE("two discrete points") {
    const SpacePresentation two{{SpaceBlock::finite(2)}};
    const HatMap h = hat_map(two);
    CHECK(h.t0_separating);
    CHECK(h.image == PointSet::full(co_algebra(two).shape()));
    const Algebra co = co_algebra(two);
    for (const Element& u : co.elements()) {
      for (Index i = 0; i < 2; ++i) {
        CHECK(evaluate(co, hat_character(two, Point::at(0, i)), u) == point_in_clopen(two, Point::at(0, i), u));
      }
    }
  }
  SUBCASE("one-point compactification") {
    const SpacePresentation k{{SpaceBlock::one_point_compactification()}};
    const HatMap h = hat_map(k);
    CHECK(h.t0_separating);
    CHECK(h.image == PointSet::full(fc.shape()));
    CHECK(hat_character(k, Point::limit(0)) == Point::limit(0));
    // The limit's hat sends U to 1 exactly when U contains the limit.
    CHECK(evaluate(fc, hat_character(k, Point::limit(0)), fc.make({Subset::cofinite_except({0})})));
    CHECK_FALSE(evaluate(fc, hat_character(k, Point::limit(0)), fc.make({Subset::finite({0})})));
  }
  SUBCASE("empty space") {
    const HatMap h = hat_map(SpacePresentation{});
    CHECK(h.t0_separating);
    CHECK(is_empty(h.image));
  }
  SUBCASE("countable discrete space") {
    CHECK_THROWS_AS(hat_map(SpacePresentation{{SpaceBlock::discrete_countable()}}), Error);
  }
}

TEST_CASE("dual point maps") {
  const Algebra pq = Algebra::finite({"p", "q"});
  const Algebra u = Algebra::finite({"u"});
  CHECK(dual_point_map(Homomorphism::identity(pq)) == PointMap::identity(pq.shape()));

  std::vector<BlockRule> rules(1);
  rules[0].table.emplace(0, Point::at(0, 0));
  const Homomorphism phi(pq, u, PointMap(u.shape(), pq.shape(), rules));
  CHECK(dual_point_map(phi)(Point::at(0, 0)) == Point::at(0, 0));

  const Algebra zero = Algebra::finite({});
  const auto homs = all_homomorphisms(pq, zero);
  REQUIRE(homs.size() == 1);
  CHECK(dual_point_map(homs[0]).source().front().size() == 0);
}

TEST_CASE("dual point maps are continuous and contravariant") {
  for (unsigned n = 0; n <= 3; ++n) {
    for (unsigned m = 0; m <= 3; ++m) {
      const Algebra a = finite_n(n);
      const Algebra b = finite_n(m);
      for (const Homomorphism& f : all_homomorphisms(a, b)) {
        for (const Element& e : a.elements()) {
          REQUIRE(f.dual().preimage(stone_set(a, e)) == stone_set(b, f(e)));
        }
        for (unsigned k = 0; k <= 2; ++k) {
          const Algebra c = finite_n(k);
          for (const Homomorphism& g : all_homomorphisms(b, c)) {
            REQUIRE(dual_point_map(compose(g, f)) == compose(dual_point_map(f), dual_point_map(g)));
          }
        }
      }
    }
  }
}

TEST_CASE("first_mismatch locates a disagreement with the evens clopen") {
  const PointSet principals = fc_set(Subset::all(), false);
  const SymbolicClopen evens{0, Subset::all(), ResidueClass{}};
  for (const Subset& s : {Subset::finite({0, 2, 4}), Subset::cofinite_except({1, 3}), Subset::none(), Subset::all()}) {
    const Element a = fc.make({s});
    const Index i = first_mismatch(fc, principals, a, evens);
    CHECK(stone_trace(fc, principals, a).contains(Point::at(0, i)) != (i % 2 == 0));
  }
}
