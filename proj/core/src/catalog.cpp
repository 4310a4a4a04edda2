#include "stonedual/catalog.hpp"

namespace stonedual {

namespace {

Catalog build() {
  Catalog c;
  const std::vector<std::string> labels{"p", "q", "r", "s"};
  for (std::size_t n = 0; n <= labels.size(); ++n) {
    c.algebras.push_back({"finite-" + std::to_string(n),
                          Algebra::finite(std::vector<std::string>(labels.begin(), labels.begin() + n))});
  }
  const Algebra fc = Algebra::finite_cofinite();
  const Algebra fc4 = Algebra::finite_cofinite(Universe::finite(4));
  const Algebra fc_fin = Algebra::product({Factor::finite_cofinite(), Factor::finite({"p", "q"})});
  const Algebra fc_fc = Algebra::product({Factor::finite_cofinite(), Factor::finite_cofinite()});
  c.algebras.push_back({"fc-nat", fc});
  c.algebras.push_back({"fc-4", fc4});
  c.algebras.push_back({"fc-x-finite-2", fc_fin});
  c.algebras.push_back({"fc-x-fc", fc_fc});

  // Pairs: the whole Stone space is ldz for every algebra.
  for (const CatalogAlgebra& a : c.algebras) {
    c.pairs.push_back({a.id + "/S(A)", a.algebra, PointSet::full(a.algebra.shape()), true, true, true});
  }
  PointSet principals = PointSet::full(fc.shape());
  principals.blocks[0].limit = false;
  c.pairs.push_back({"fc-nat/principals", fc, principals, true, false, false});
  PointSet missing_zero = PointSet::full(fc.shape());
  missing_zero.blocks[0].principal = Subset::cofinite_except({0});
  c.pairs.push_back({"fc-nat/without-0", fc, missing_zero, false, false, false});
  c.pairs.push_back({"fc-nat/{0,1,free}", fc, PointSet{{{Subset::finite({0, 1}), true}}}, false, false, false});
  const Algebra& two = c.algebras[2].algebra;
  c.pairs.push_back({"finite-2/{x_p}", two, PointSet::of(two.shape(), {Point::at(0, 0)}), false, false, false});
  PointSet mixed = PointSet::full(fc_fin.shape());
  mixed.blocks[0].limit = false;
  c.pairs.push_back({"fc-x-finite-2/principals", fc_fin, mixed, true, false, false});

  // Ideals.
  for (std::size_t n = 0; n <= labels.size(); ++n) {
    const Algebra& a = c.algebras[n].algebra;
    c.lba_pairs.push_back({"finite-" + std::to_string(n) + "/full", Ideal::full(a), true, true});
    if (n >= 2) {
      c.lba_pairs.push_back({"finite-" + std::to_string(n) + "/principal-p",
                             Ideal::principal(a, a.from_labels({"p"})), false, false});
    }
  }
  c.lba_pairs.push_back({"fc-nat/full", Ideal::full(fc), true, true});
  c.lba_pairs.push_back({"fc-nat/finite-support", Ideal::finite_support(fc, 0), true, false});
  c.lba_pairs.push_back({"fc-nat/principal-without-0",
                         Ideal::principal(fc, fc.make({Subset::cofinite_except({0})})), false, false});
  c.lba_pairs.push_back({"fc-nat/principal-{0,1}", Ideal::principal(fc, fc.make({Subset::finite({0, 1})})), false,
                         false});
  c.lba_pairs.push_back({"fc-4/finite-support", Ideal::finite_support(fc4, 0), true, true});
  c.lba_pairs.push_back({"fc-x-finite-2/full", Ideal::full(fc_fin), true, true});
  c.lba_pairs.push_back({"fc-x-finite-2/finite-support", Ideal::finite_support(fc_fin, 0), true, false});
  c.lba_pairs.push_back({"fc-x-fc/full", Ideal::full(fc_fc), true, true});
  c.lba_pairs.push_back({"fc-x-fc/finite-support-1", Ideal::finite_support(fc_fc, 1), true, false});

  // Spaces.
  for (Index n = 0; n <= 3; ++n) c.spaces.push_back({"finite-" + std::to_string(n), {{SpaceBlock::finite(n)}}, true});
  c.spaces.push_back({"k-omega", {{SpaceBlock::one_point_compactification()}}, true});
  c.spaces.push_back(
      {"finite-2+k-omega", {{SpaceBlock::finite(2), SpaceBlock::one_point_compactification()}}, true});
  c.spaces.push_back({"k-omega+k-omega",
                      {{SpaceBlock::one_point_compactification(), SpaceBlock::one_point_compactification()}}, true});
  c.spaces.push_back({"discrete-omega", {{SpaceBlock::discrete_countable()}}, false});
  c.spaces.push_back({"finite-1+discrete-omega", {{SpaceBlock::finite(1), SpaceBlock::discrete_countable()}}, false});
  return c;
}

}  // namespace

const Catalog& builtin_catalog() {
  static const Catalog catalog = build();
  return catalog;
}

}  // namespace stonedual
