#include "stonedual/duality.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

namespace {

std::vector<Index> upto(Index n) {
  std::vector<Index> out(n);
  for (Index i = 0; i < n; ++i) out[i] = i;
  return out;
}

// Whether the character y agrees with the function a |-> value(a).  Small
// finite algebras are checked on every element.  Otherwise the block units
// and the atoms at y and at `hint` (the expected character) suffice: two
// distinct characters already differ on one of them.
bool agrees(const Algebra& algebra, const Character& y, const Character& hint,
            const std::function<bool(const Element&)>& value) {
  std::vector<Element> tests;
  if (algebra.is_finite() && algebra.cardinality() <= 4096) {
    tests = algebra.elements();
  } else {
    for (Index k = 0; k < algebra.block_count(); ++k) tests.push_back(algebra.block_unit(k));
    for (Element& e : separating_elements(algebra, y, hint)) tests.push_back(std::move(e));
    if (y.index) tests.push_back(algebra.atom(y.block, *y.index));
  }
  return std::all_of(tests.begin(), tests.end(),
                     [&](const Element& a) { return evaluate(algebra, y, a) == value(a); });
}

// Points of x worth checking: all of them on finite shapes, the decisive
// points otherwise.
std::vector<Point> probe_points(const Shape& shape, const PointSet& x, Index bound) {
  return decisive_points(shape, x, bound);
}

// The presentation point p |-> its character, as a point map.  Infinite
// blocks must keep their indices.
PointMap subspace_embedding(const Subspace& sub) {
  const Shape src = sub.space.shape();
  std::vector<BlockRule> rules(src.size());
  for (Index k = 0; k < src.size(); ++k) {
    if (src[k].is_infinite()) {
      if (!sub.points.blocks[k].principal.is_all()) {
        throw Error(ErrorCode::UnrepresentableCO, "block " + std::to_string(k) + " is not identity-indexed");
      }
      rules[k].fallback = IdentityDefault{k};
      continue;
    }
    for (Index i = 0; i < src[k].size(); ++i) rules[k].table.emplace(i, sub.to_ambient(Point::at(k, i)));
  }
  return PointMap(src, sub.algebra.shape(), std::move(rules));
}

// The inverse of the embedding; needs every character to lie in the subspace.
PointMap subspace_projection(const Subspace& sub) {
  const Shape& src = sub.algebra.shape();
  std::vector<BlockRule> rules(src.size());
  auto carry = [&](const Character& c) {
    auto p = sub.to_space(c);
    if (!p) throw Error(ErrorCode::NotValidated, "character " + to_string(c) + " is outside the subspace");
    return *p;
  };
  for (Index k = 0; k < src.size(); ++k) {
    if (src[k].is_infinite()) {
      carry(Point::limit(k));
      if (!sub.points.blocks[k].principal.is_all()) {
        throw Error(ErrorCode::NotValidated, "block " + std::to_string(k) + " misses principal characters");
      }
      rules[k].fallback = IdentityDefault{k};
      continue;
    }
    for (Index i = 0; i < src[k].size(); ++i) rules[k].table.emplace(i, carry(Point::at(k, i)));
  }
  return PointMap(src, sub.space.shape(), std::move(rules));
}

void require_hat_identity(const SpacePresentation& space) {
  const HatMap hat = hat_map(space);
  if (hat.map != PointMap::identity(hat.map.source())) {
    throw Error(ErrorCode::NotValidated, "hat map of " + space.describe() + " is not index-preserving");
  }
}

}  // namespace

std::string_view to_string(DzLevel level) {
  switch (level) {
    case DzLevel::Z: return "z";
    case DzLevel::Dz: return "dz";
    case DzLevel::Ldz: return "ldz";
  }
  return "?";
}

bool DzVerdict::satisfies(DzLevel level) const noexcept {
  switch (level) {
    case DzLevel::Z: return z;
    case DzLevel::Dz: return dz;
    case DzLevel::Ldz: return ldz;
  }
  return false;
}

std::string DzVerdict::describe(const Algebra& algebra) const {
  std::ostringstream out;
  out << (ldz ? "ldz" : dz ? "dz (not open)" : z ? "z (not dz)" : "not z");
  if (density_witness) out << "; " << algebra.describe(*density_witness) << " is nonzero but misses X";
  if (clopen_witness) out << "; " << clopen_witness->describe() << " is clopen in X but not a trace";
  if (openness_witness) out << "; " << to_string(*openness_witness) << " has no neighbourhood inside X";
  return out.str();
}

DzVerdict validate(const Algebra& algebra, const PointSet& x, ResidueClass pattern) {
  const Shape& shape = algebra.shape();
  check_point_set(shape, x);
  DzVerdict v;
  v.z = is_dense(shape, x);
  if (!v.z) {
    // Closure only ever adds limit points, so some isolated point is missing.
    for (Index k = 0; k < shape.size() && !v.density_witness; ++k) {
      const Subset missing = shape[k].complement(x.blocks[k].principal);
      if (!missing.is_empty()) v.density_witness = algebra.atom(k, *select(missing, 0));
    }
    return v;
  }
  const TraceVerdict traces = traces_are_all_clopens(shape, x, pattern);
  v.dz = traces.complete;
  if (!v.dz) {
    v.clopen_witness = traces.witness;
    return v;
  }
  v.ldz = is_open(shape, x);
  if (!v.ldz) {
    for (Index k = 0; k < shape.size(); ++k) {
      if (x.blocks[k].limit && !x.blocks[k].principal.cofinite) v.openness_witness = Point::limit(k);
    }
  }
  return v;
}

DzAlgebra::DzAlgebra(Algebra algebra, PointSet points, DzVerdict verdict)
    : algebra_(std::move(algebra)), points_(std::move(points)), verdict_(std::move(verdict)) {}

DzAlgebra DzAlgebra::make(const Algebra& algebra, const PointSet& x, DzLevel level) {
  DzVerdict verdict = validate(algebra, x);
  if (!verdict.satisfies(level) || !verdict.z) {
    throw Error(ErrorCode::NotValidated, "(" + algebra.describe() + ", " + to_string(x) + ") is not " +
                                             std::string(to_string(level)) + ": " + verdict.describe(algebra));
  }
  return DzAlgebra(algebra, x, std::move(verdict));
}

DzLevel DzAlgebra::level() const noexcept {
  if (verdict_.ldz) return DzLevel::Ldz;
  if (verdict_.dz) return DzLevel::Dz;
  return DzLevel::Z;
}

// ---------------------------------------------------------------------------

DzMorphism::DzMorphism(DzAlgebra source, DzAlgebra target, Homomorphism map, PointMap point_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)), point_map_(std::move(point_map)) {
  if (!(map_.domain() == source_.algebra()) || !(map_.codomain() == target_.algebra()) ||
      point_map_.source() != target_.algebra().shape() || point_map_.target() != source_.algebra().shape()) {
    throw Error(ErrorCode::DomainMismatch, "morphism components do not match its source and target");
  }
}

DzMorphism DzMorphism::make(DzAlgebra source, DzAlgebra target, Homomorphism map, PointMap point_map) {
  DzMorphism m(std::move(source), std::move(target), std::move(map), std::move(point_map));
  if (auto bad = dz_violation(m)) {
    throw Error(ErrorCode::NotValidated, "f(x') differs from x' o phi at x' = " + to_string(*bad));
  }
  return m;
}

DzMorphism DzMorphism::unchecked(DzAlgebra source, DzAlgebra target, Homomorphism map, PointMap point_map) {
  return DzMorphism(std::move(source), std::move(target), std::move(map), std::move(point_map));
}

DzMorphism DzMorphism::identity(const DzAlgebra& d) {
  return make(d, d, Homomorphism::identity(d.algebra()), PointMap::identity(d.algebra().shape()));
}

bool operator==(const DzMorphism& a, const DzMorphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.map_ == b.map_ &&
         !first_disagreement(a.point_map_, b.point_map_, a.target_.points());
}

std::optional<Point> dz_violation(const DzMorphism& m) {
  const Algebra& A = m.source().algebra();
  const Algebra& B = m.target().algebra();
  const PointMap& f = m.point_map();
  const Homomorphism& phi = m.map();
  const Index bound = f.bound() + phi.dual().bound() + m.target().points().bound() + 2;
  for (const Point& x : probe_points(B.shape(), m.target().points(), bound)) {
    const Character y = f(x);
    if (!m.source().points().contains(y)) return x;
    if (!agrees(A, y, phi.dual()(x), [&](const Element& a) { return evaluate(B, x, phi(a)); })) return x;
  }
  return std::nullopt;
}

DzMorphism compose(const DzMorphism& outer, const DzMorphism& inner) {
  if (!(inner.target() == outer.source())) {
    throw Error(ErrorCode::DomainMismatch, "DZA morphisms are not composable");
  }
  return DzMorphism::unchecked(inner.source(), outer.target(), compose(outer.map(), inner.map()),
                               compose(inner.point_map(), outer.point_map()));
}

std::vector<Element> probe_elements(const Algebra& algebra, Index bound) {
  if (algebra.is_finite() && algebra.cardinality() <= 256) return algebra.elements();
  std::vector<Element> out{algebra.bottom(), algebra.top()};
  for (const Element& a : algebra.atoms(bound)) {
    out.push_back(a);
    out.push_back(algebra.complement(a));
  }
  for (Index k = 0; k < algebra.block_count(); ++k) {
    out.push_back(algebra.block_unit(k));
    out.push_back(algebra.complement(algebra.block_unit(k)));
    if (!algebra.shape()[k].is_infinite()) continue;
    std::vector<Subset> parts(algebra.block_count());
    parts[k] = Subset::finite(upto(bound));
    out.push_back(algebra.make(parts));
    parts[k] = Subset::cofinite_except(upto(bound));
    out.push_back(algebra.make(parts));
    parts[k] = Subset::finite({0, 2, 4});
    out.push_back(algebra.make(parts));
    parts[k] = Subset::cofinite_except({1, 3});
    out.push_back(algebra.make(parts));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

DzAlgebra clopen_dual(const SpacePresentation& space) {
  const Algebra co = co_algebra(space);
  return DzAlgebra::make(co, hat_map(space).image, DzLevel::Ldz);
}

DzMorphism clopen_dual(const SpaceMap& f) {
  require_hat_identity(f.source());
  const PointMap f_hat = compose(hat_map(f.target()).map, f.rule());
  return DzMorphism::make(clopen_dual(f.target()), clopen_dual(f.source()), clopen_map(f), f_hat);
}

Subspace underlying_space(const DzAlgebra& d) { return classify(d.algebra(), d.points()); }

SpaceMap underlying_map(const DzMorphism& m) {
  return induced_space_map(underlying_space(m.target()), underlying_space(m.source()), m.point_map());
}

LbaPair to_lba(const DzAlgebra& d) {
  if (!d.verdict().ldz) {
    throw Error(ErrorCode::NotValidated, "E needs an ldz pair, got " + d.verdict().describe(d.algebra()));
  }
  LbaPair p(iota_inverse(d.algebra(), d.points()));
  if (!p.is_zlba()) throw Error(ErrorCode::NotValidated, "I_X is not a ZLBA: " + p.verdict().reason);
  return p;
}

LbaMorphism to_lba(const DzMorphism& m) { return LbaMorphism(to_lba(m.source()), to_lba(m.target()), m.map()); }

DzAlgebra to_ldz(const LbaPair& p) {
  if (!p.is_zlba()) throw Error(ErrorCode::NotZlba, p.ideal().describe() + " is not a ZLBA: " + p.verdict().reason);
  return DzAlgebra::make(p.algebra(), iota(p.ideal()), DzLevel::Ldz);
}

DzMorphism to_ldz(const LbaMorphism& m) {
  DzAlgebra source = to_ldz(m.source());
  DzAlgebra target = to_ldz(m.target());
  const PointMap& f = m.map().dual();
  if (auto escape = first_escape(f, target.points(), source.points())) {
    throw Error(ErrorCode::LbaConditionFailed, "x' o phi leaves X_I at x' = " + to_string(*escape));
  }
  return DzMorphism::make(std::move(source), std::move(target), m.map(), f);
}

bool check_EEp(const LbaPair& p) { return to_lba(to_ldz(p)) == p; }

bool check_EpE(const DzAlgebra& d) { return to_ldz(to_lba(d)) == d; }

LbaPair theta_t(const SpacePresentation& space) { return LbaPair(ko_ideal(space)); }

LbaMorphism theta_t(const SpaceMap& f) { return LbaMorphism(theta_t(f.target()), theta_t(f.source()), clopen_map(f)); }

Subspace theta_a(const LbaPair& p) {
  if (!p.is_zlba()) throw Error(ErrorCode::NotZlba, p.ideal().describe() + " is not a ZLBA: " + p.verdict().reason);
  return classify(p.algebra(), l_set(p.ideal()));
}

SpaceMap theta_a(const LbaMorphism& m) {
  return induced_space_map(theta_a(m.target()), theta_a(m.source()), m.map().dual());
}

CoherenceVerdict check_EF_theta_t(const SpacePresentation& space) {
  const DzAlgebra d = clopen_dual(space);
  const LbaPair lhs = to_lba(d);
  const LbaPair rhs = theta_t(space);
  if (!(lhs == rhs)) return {false, "E(F(X)) = " + lhs.ideal().describe() + " but KO(X) = " + rhs.ideal().describe()};
  // Direct check: U is in I_{X-hat} iff U-hat lies inside X-hat, and U is in
  // KO(X) iff U is compact.  Both must agree on every probed clopen.
  const Shape shape = space.shape();
  for (const Element& u : probe_elements(d.algebra())) {
    PointSet as_set = PointSet::empty(shape);
    for (Index k = 0; k < shape.size(); ++k) {
      as_set.blocks[k].principal = u.parts[k];
      as_set.blocks[k].limit = shape[k].is_infinite() && point_in_clopen(space, Point::limit(k), u);
    }
    const bool inside = is_subset(stone_set(d.algebra(), u), d.points());
    if (inside != lhs.ideal().contains(u) || is_compact(shape, as_set) != rhs.ideal().contains(u) ||
        inside != is_compact(shape, as_set)) {
      return {false, "I_X-hat and KO(X) disagree on " + d.algebra().describe(u)};
    }
  }
  return {true, "I_X-hat = KO(X) = " + rhs.ideal().describe()};
}

CoherenceVerdict check_EF_theta_t(const SpaceMap& f) {
  const LbaMorphism lhs = to_lba(clopen_dual(f));
  const LbaMorphism rhs = theta_t(f);
  if (lhs == rhs) return {true, "E(F(f)) = theta_t(f)"};
  return {false, "E(F(f)) and theta_t(f) differ"};
}

CoherenceVerdict check_GEp_theta_a(const LbaPair& p) {
  const Subspace lhs = underlying_space(to_ldz(p));
  const Subspace rhs = theta_a(p);
  if (lhs == rhs) return {true, "G(Ep(p)) = theta_a(p) = " + rhs.space.describe()};
  return {false, "G(Ep(p)) = " + to_string(lhs.points) + " but L_I = " + to_string(rhs.points)};
}

CoherenceVerdict check_GEp_theta_a(const LbaMorphism& m) {
  const SpaceMap lhs = underlying_map(to_ldz(m));
  const SpaceMap rhs = theta_a(m);
  if (lhs == rhs) return {true, "G(Ep(phi)) = theta_a(phi)"};
  return {false, "G(Ep(phi)) and theta_a(phi) differ"};
}

// ---------------------------------------------------------------------------

MzMap::MzMap(Algebra algebra, std::optional<Homomorphism> table, Shape y_shape, PointSet y_points)
    : algebra_(std::move(algebra)), table_(std::move(table)), y_shape_(std::move(y_shape)), y_points_(std::move(y_points)) {
  x_alpha_ = table_ ? table_->dual().image(y_points_) : y_points_;
  MapLevels& lv = levels_;
  const bool finite = algebra_.is_finite() && std::all_of(y_shape_.begin(), y_shape_.end(), [](const Universe& u) {
                        return !u.is_infinite();
                      });
  const Index bound = y_points_.bound() + (table_ ? table_->dual().bound() : 0) + 2;
  const std::vector<Point> ys = probe_points(y_shape_, y_points_, bound);

  // Injectivity: no nonzero a with alpha(a) empty.
  if (finite) {
    lv.injective = true;
    for (const Element& a : algebra_.elements()) {
      if (algebra_.is_zero(a)) continue;
      if (std::none_of(ys.begin(), ys.end(), [&](const Point& y) { return contains(y, a); })) {
        lv.injective = false;
        lv.witness = "alpha(" + algebra_.describe(a) + ") is empty";
        break;
      }
    }
  } else {
    const DzVerdict z = validate(algebra_, x_alpha_);
    lv.injective = z.z;
    if (!z.z) lv.witness = "alpha(" + algebra_.describe(*z.density_witness) + ") is empty";
  }

  // {y} is a meet of values of alpha iff every other z is cut away by some
  // alpha(a) containing y.
  lv.atoms_are_meets = true;
  for (const Point& y : ys) {
    for (const Point& z : ys) {
      if (y == z) continue;
      std::vector<Element> cuts;
      if (finite) {
        cuts = algebra_.elements();
      } else {
        cuts = separating_elements(algebra_, alpha_point(y), alpha_point(z));
        for (std::size_t i = 0, n = cuts.size(); i < n; ++i) cuts.push_back(algebra_.complement(cuts[i]));
      }
      const bool cut = std::any_of(cuts.begin(), cuts.end(),
                                   [&](const Element& a) { return contains(y, a) && !contains(z, a); });
      if (!cut) {
        lv.atoms_are_meets = false;
        if (lv.witness.empty()) lv.witness = "atom " + to_string(y) + " is not a meet: " + to_string(z) + " survives";
        break;
      }
    }
    if (!lv.atoms_are_meets) break;
  }

  lv.z_map = lv.injective && lv.atoms_are_meets;
  const DzVerdict v = validate(algebra_, x_alpha_);
  lv.mz_map = lv.z_map && v.dz;
  lv.lmz_map = lv.mz_map && v.ldz;
  if (lv.z_map && !lv.mz_map && lv.witness.empty()) lv.witness = "(A, X_alpha) is " + v.describe(algebra_);
  if (lv.mz_map && !lv.lmz_map && lv.witness.empty()) lv.witness = "X_alpha is not open";
}

MzMap MzMap::from_dz(const DzAlgebra& d) { return MzMap(d.algebra(), std::nullopt, d.algebra().shape(), d.points()); }

MzMap MzMap::from_table(const Homomorphism& alpha) {
  if (!alpha.domain().is_finite() || !alpha.codomain().is_finite()) {
    throw Error(ErrorCode::FiniteBackendOnly, "map tables need finite domain and codomain");
  }
  const Shape& y = alpha.codomain().shape();
  return MzMap(alpha.domain(), alpha, y, PointSet::full(y));
}

Character MzMap::alpha_point(const Point& y) const { return table_ ? table_->dual()(y) : y; }

bool MzMap::contains(const Point& y, const Element& a) const { return evaluate(algebra_, alpha_point(y), a); }

MapLevels validate_map_levels(const Homomorphism& alpha) { return MzMap::from_table(alpha).levels(); }

MBoolMorphism::MBoolMorphism(MzMap source, MzMap target, Homomorphism map, PointMap sigma_dual)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)), sigma_dual_(std::move(sigma_dual)) {
  if (!(map_.domain() == source_.algebra()) || !(map_.codomain() == target_.algebra()) ||
      sigma_dual_.source() != target_.y_shape() || sigma_dual_.target() != source_.y_shape()) {
    throw Error(ErrorCode::DomainMismatch, "MBool morphism components do not match its source and target");
  }
}

MBoolMorphism MBoolMorphism::make(MzMap source, MzMap target, Homomorphism map, PointMap sigma_dual) {
  MBoolMorphism m(std::move(source), std::move(target), std::move(map), std::move(sigma_dual));
  if (auto bad = mbool_violation(m)) {
    throw Error(ErrorCode::NotValidated, "alpha' o phi differs from sigma o alpha at y' = " + to_string(*bad));
  }
  return m;
}

MBoolMorphism MBoolMorphism::unchecked(MzMap source, MzMap target, Homomorphism map, PointMap sigma_dual) {
  return MBoolMorphism(std::move(source), std::move(target), std::move(map), std::move(sigma_dual));
}

MBoolMorphism MBoolMorphism::identity(const MzMap& m) {
  return make(m, m, Homomorphism::identity(m.algebra()), PointMap::identity(m.y_shape()));
}

bool operator==(const MBoolMorphism& a, const MBoolMorphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.map_ == b.map_ &&
         !first_disagreement(a.sigma_dual_, b.sigma_dual_, a.target_.y_points());
}

std::optional<Point> mbool_violation(const MBoolMorphism& m) {
  const MzMap& src = m.source();
  const MzMap& tgt = m.target();
  const Homomorphism& phi = m.map();
  const PointMap& g = m.sigma_dual();
  const Index bound = g.bound() + phi.dual().bound() + tgt.y_points().bound() + 2;
  for (const Point& y2 : probe_points(tgt.y_shape(), tgt.y_points(), bound)) {
    const Point y = g(y2);
    if (!src.y_points().contains(y)) return y2;
    // y' in alpha'(phi(a)) must match g(y') in alpha(a), for every a.
    const Character lhs = src.alpha_point(y);
    const Character hint = phi.dual()(tgt.alpha_point(y2));
    if (!agrees(src.algebra(), lhs, hint, [&](const Element& a) { return tgt.contains(y2, phi(a)); })) {
      return y2;
    }
  }
  return std::nullopt;
}

MBoolMorphism compose(const MBoolMorphism& outer, const MBoolMorphism& inner) {
  if (!(inner.target() == outer.source())) {
    throw Error(ErrorCode::DomainMismatch, "MBool morphisms are not composable");
  }
  return MBoolMorphism::unchecked(inner.source(), outer.target(), compose(outer.map(), inner.map()),
                                  compose(inner.sigma_dual(), outer.sigma_dual()));
}

MzMap to_mz_map(const DzAlgebra& d) { return MzMap::from_dz(d); }

MBoolMorphism to_mz_map(const DzMorphism& m) {
  // P(f) is f^{-1}, whose dual function is f itself.
  return MBoolMorphism::make(MzMap::from_dz(m.source()), MzMap::from_dz(m.target()), m.map(), m.point_map());
}

DzAlgebra from_mz_map(const MzMap& m) {
  if (!m.levels().mz_map) throw Error(ErrorCode::NotValidated, "not an mz-map: " + m.levels().witness);
  return clopen_dual(classify(m.algebra(), m.x_alpha()).space);
}

DzMorphism from_mz_map(const MBoolMorphism& m) { return clopen_dual(f_sigma(m)); }

SpaceMap f_sigma(const MBoolMorphism& m) {
  const MzMap& src = m.source();
  const MzMap& tgt = m.target();
  const Subspace from = classify(tgt.algebra(), tgt.x_alpha());
  const Subspace to = classify(src.algebra(), src.x_alpha());
  const Shape from_shape = from.space.shape();
  const bool finite_source =
      std::none_of(from_shape.begin(), from_shape.end(), [](const Universe& u) { return u.is_infinite(); });
  if (!finite_source) {
    if (src.table() || tgt.table()) {
      throw Error(ErrorCode::FiniteBackendOnly, "f_sigma on infinite X_alpha needs pairs, not tables");
    }
    return induced_space_map(from, to, m.sigma_dual());
  }

  // With both powersets materialized, At(sigma) is computed from sigma itself.
  std::optional<std::vector<Index>> at_sigma;
  std::vector<Element> src_atoms;
  std::vector<Element> tgt_atoms;
  if (src.table() && tgt.table()) {
    const Homomorphism sigma(src.table()->codomain(), tgt.table()->codomain(), m.sigma_dual());
    at_sigma = atoms_map(sigma);
    src_atoms = atoms_of(src.table()->codomain());
    tgt_atoms = atoms_of(tgt.table()->codomain());
  }
  const std::vector<Point> ys = probe_points(tgt.y_shape(), tgt.y_points(), tgt.y_points().bound() + 1);
  std::vector<BlockRule> rules(from_shape.size());
  for (Index k = 0; k < from_shape.size(); ++k) {
    for (Index i = 0; i < from_shape[k].size(); ++i) {
      const Character c = from.to_ambient(Point::at(k, i));
      auto y2 = std::find_if(ys.begin(), ys.end(), [&](const Point& y) { return tgt.alpha_point(y) == c; });
      if (y2 == ys.end()) throw Error(ErrorCode::NotValidated, "no y' with alpha'_y' = " + to_string(c));
      Point y = m.sigma_dual()(*y2);
      if (at_sigma) {
        const Element atom = tgt.table()->codomain().atom(y2->block, *y2->index);
        const auto pos = static_cast<std::size_t>(std::find(tgt_atoms.begin(), tgt_atoms.end(), atom) - tgt_atoms.begin());
        const Element& image = src_atoms.at((*at_sigma)[pos]);
        for (Index b = 0; b < image.parts.size(); ++b) {
          if (!image.parts[b].is_empty()) y = Point::at(b, image.parts[b].support.front());
        }
      }
      auto p = to.to_space(src.alpha_point(y));
      if (!p) throw Error(ErrorCode::NotValidated, "alpha_y for y = " + to_string(y) + " is outside X_alpha");
      rules[k].table.emplace(i, *p);
    }
  }
  return SpaceMap(from.space, to.space, PointMap(from_shape, to.space.shape(), std::move(rules)));
}

DzIsomorphism stone_isomorphism(const DzAlgebra& d) {
  if (!d.verdict().dz) throw Error(ErrorCode::NotValidated, "the Stone identification needs a dz pair");
  const Subspace sub = classify(d.algebra(), d.points());
  const DzAlgebra image = from_mz_map(MzMap::from_dz(d));
  const PointMap embed = subspace_embedding(sub);
  const PointMap project = subspace_projection(sub);
  DzMorphism forward = DzMorphism::make(d, image, Homomorphism(d.algebra(), image.algebra(), embed), embed);
  DzMorphism backward = DzMorphism::make(image, d, Homomorphism(image.algebra(), d.algebra(), project), project);
  return {std::move(forward), std::move(backward)};
}

CoherenceVerdict check_stone_isomorphism(const DzAlgebra& d) {
  const DzIsomorphism iso = stone_isomorphism(d);
  if (!(compose(iso.backward, iso.forward) == DzMorphism::identity(d))) {
    return {false, "backward o forward is not the identity"};
  }
  const DzAlgebra& image = iso.forward.target();
  if (!(compose(iso.forward, iso.backward) == DzMorphism::identity(image))) {
    return {false, "forward o backward is not the identity"};
  }
  const Subspace sub = classify(d.algebra(), d.points());
  for (const Element& a : probe_elements(d.algebra())) {
    const Element u = iso.forward.map()(a);
    const PointSet trace = stone_trace(d.algebra(), d.points(), a);
    const Shape shape = sub.space.shape();
    for (const Point& p : decisive_points(shape, PointSet::full(shape), trace.bound() + 2)) {
      if (point_in_clopen(sub.space, p, u) != trace.contains(sub.to_ambient(p))) {
        return {false, "the image of " + d.algebra().describe(a) + " is not its trace at " + to_string(p)};
      }
    }
  }
  return {true, "G'(F'(d)) is isomorphic to d through the Stone map"};
}

// ---------------------------------------------------------------------------

Algebra powerset(Index n) {
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Algebra::finite(std::move(labels));
}

Homomorphism powerset_map(const std::vector<Index>& f, Index target_size) {
  std::vector<BlockRule> rules(1);
  for (Index i = 0; i < f.size(); ++i) {
    if (f[i] >= target_size) {
      throw Error(ErrorCode::MalformedMorphism, "f(" + std::to_string(i) + ") is outside the target set");
    }
    rules[0].table.emplace(i, Point::at(0, f[i]));
  }
  const Index n = static_cast<Index>(f.size());
  PointMap dual({Universe::finite(n)}, {Universe::finite(target_size)}, std::move(rules));
  return Homomorphism(powerset(target_size), powerset(n), std::move(dual));
}

std::vector<Element> atoms_of(const Algebra& b) {
  if (!b.is_finite()) throw Error(ErrorCode::FiniteBackendOnly, b.describe() + " is not finite");
  return b.atoms(0);
}

std::vector<Index> atoms_map(const Homomorphism& sigma) {
  const Algebra& B = sigma.domain();
  const Algebra& B2 = sigma.codomain();
  if (!B.is_finite() || !B2.is_finite()) throw Error(ErrorCode::FiniteBackendOnly, "At needs finite algebras");
  const std::vector<Element> elems = B.elements();
  std::vector<Element> images;
  for (const Element& b : elems) images.push_back(sigma(b));
  const std::vector<Element> atoms = atoms_of(B);
  std::vector<Index> out;
  for (const Element& x : atoms_of(B2)) {
    Element m = B.top();
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (B2.leq(x, images[j])) m = B.meet(m, elems[j]);
    }
    auto it = std::find(atoms.begin(), atoms.end(), m);
    if (it == atoms.end()) throw Error(ErrorCode::NotValidated, "meet above " + B2.describe(x) + " is not an atom");
    out.push_back(static_cast<Index>(it - atoms.begin()));
  }
  return out;
}

}  // namespace stonedual
