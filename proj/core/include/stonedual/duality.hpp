#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/ideal.hpp"
#include "stonedual/points.hpp"
#include "stonedual/space.hpp"
#include "stonedual/stone_space.hpp"

namespace stonedual {

// ---------------------------------------------------------------------------
// Pairs (A, X) with X a set of characters.

enum class DzLevel { Z, Dz, Ldz };
std::string_view to_string(DzLevel level);

struct DzVerdict {
  bool z = false;    // X dense in S(A)
  bool dz = false;   // additionally every clopen of X is a trace
  bool ldz = false;  // additionally X open
  std::optional<Element> density_witness;  // nonzero a with s(a) missing X
  std::optional<SymbolicClopen> clopen_witness;
  std::optional<Point> openness_witness;   // point of X with no neighbourhood inside X

  bool satisfies(DzLevel level) const noexcept;
  std::string describe(const Algebra& algebra) const;
};

DzVerdict validate(const Algebra& algebra, const PointSet& x, ResidueClass pattern = ResidueClass{});

/// A pair validated at least at level z.
class DzAlgebra {
 public:
  /// Throws NotValidated when (algebra, x) falls short of `level`.
  static DzAlgebra make(const Algebra& algebra, const PointSet& x, DzLevel level = DzLevel::Dz);

  const Algebra& algebra() const noexcept { return algebra_; }
  const PointSet& points() const noexcept { return points_; }
  const DzVerdict& verdict() const noexcept { return verdict_; }
  DzLevel level() const noexcept;

  friend bool operator==(const DzAlgebra& a, const DzAlgebra& b) {
    return a.algebra_ == b.algebra_ && a.points_ == b.points_;
  }

 private:
  DzAlgebra(Algebra algebra, PointSet points, DzVerdict verdict);
  Algebra algebra_;
  PointSet points_;
  DzVerdict verdict_;
};

/// A morphism (A, X) -> (A', X'): phi: A -> A' with point map f: X' -> X
/// satisfying f(x') = x' o phi.  f is stored on the ambient shapes and only
/// its values on X' matter.
class DzMorphism {
 public:
  /// Throws NotValidated with the offending point when the condition fails.
  static DzMorphism make(DzAlgebra source, DzAlgebra target, Homomorphism map, PointMap point_map);
  /// No checking; used to feed deliberately broken morphisms to the checkers.
  static DzMorphism unchecked(DzAlgebra source, DzAlgebra target, Homomorphism map, PointMap point_map);
  static DzMorphism identity(const DzAlgebra& d);

  const DzAlgebra& source() const noexcept { return source_; }
  const DzAlgebra& target() const noexcept { return target_; }
  const Homomorphism& map() const noexcept { return map_; }
  const PointMap& point_map() const noexcept { return point_map_; }

  friend bool operator==(const DzMorphism& a, const DzMorphism& b);

 private:
  DzMorphism(DzAlgebra source, DzAlgebra target, Homomorphism map, PointMap point_map);
  DzAlgebra source_;
  DzAlgebra target_;
  Homomorphism map_;
  PointMap point_map_;
};

/// First x' in X' where f(x') differs from the character x' o phi, or where
/// f(x') leaves X.  Characters are compared by evaluating both sides on
/// atoms, block units and separating elements.
std::optional<Point> dz_violation(const DzMorphism& m);

/// outer after inner.
DzMorphism compose(const DzMorphism& outer, const DzMorphism& inner);

/// A finite set of elements used to probe an algebra: every element when the
/// algebra is finite and small, otherwise atoms, block units, their
/// complements and a few finite and cofinite combinations below `bound`.
std::vector<Element> probe_elements(const Algebra& algebra, Index bound = 6);

// ---------------------------------------------------------------------------
// Spaces and pairs.

/// (CO(X), X-hat).  Validated at level ldz.  Throws UnrepresentableCO.
DzAlgebra clopen_dual(const SpacePresentation& space);
/// (CO(f), f-hat): F(Y) -> F(X) for f: X -> Y.
DzMorphism clopen_dual(const SpaceMap& f);

/// X with its subspace structure.
Subspace underlying_space(const DzAlgebra& d);
/// The point map f: G(target) -> G(source).
SpaceMap underlying_map(const DzMorphism& m);

/// (A, I_X) with I_X = {a : s(a) inside X}.  Requires an ldz pair; throws
/// NotValidated when the result is not a ZLBA.
LbaPair to_lba(const DzAlgebra& d);
LbaMorphism to_lba(const DzMorphism& m);

/// (A, X_I) with X_I the union of s(a) over a in I.  Throws NotZlba.
DzAlgebra to_ldz(const LbaPair& p);
/// (phi, f_phi) with f_phi(x') = x' o phi; throws LbaConditionFailed when
/// f_phi leaves X_I.
DzMorphism to_ldz(const LbaMorphism& m);

bool check_EEp(const LbaPair& p);
bool check_EpE(const DzAlgebra& d);

/// (CO(X), KO(X)).
LbaPair theta_t(const SpacePresentation& space);
LbaMorphism theta_t(const SpaceMap& f);
/// L_I^A as a space.  Throws NotZlba.
Subspace theta_a(const LbaPair& p);
SpaceMap theta_a(const LbaMorphism& m);

struct CoherenceVerdict {
  bool pass = true;
  std::string detail;
};
/// E(F(X)) = theta_t(X), and I_{X-hat} = KO(X) checked directly: a clopen
/// lies in I_{X-hat} exactly when it is compact.
CoherenceVerdict check_EF_theta_t(const SpacePresentation& space);
CoherenceVerdict check_EF_theta_t(const SpaceMap& f);
/// G(Ep(p)) = theta_a(p).
CoherenceVerdict check_GEp_theta_a(const LbaPair& p);
CoherenceVerdict check_GEp_theta_a(const LbaMorphism& m);

// ---------------------------------------------------------------------------
// Maps into complete atomic algebras.

struct MapLevels {
  bool injective = false;
  bool atoms_are_meets = false;
  bool z_map = false;
  bool mz_map = false;
  bool lmz_map = false;
  std::string witness;
};

/// alpha: A -> P(Y).  Either derived from a pair (Y = X, alpha = s_A^X, the
/// powerset kept implicit) or given as a table into a finite powerset.
class MzMap {
 public:
  static MzMap from_dz(const DzAlgebra& d);
  /// alpha into a finite powerset algebra.  Throws FiniteBackendOnly.
  static MzMap from_table(const Homomorphism& alpha);

  const Algebra& algebra() const noexcept { return algebra_; }
  const std::optional<Homomorphism>& table() const noexcept { return table_; }
  /// Points of Y and the shape they live in.
  const Shape& y_shape() const noexcept { return y_shape_; }
  const PointSet& y_points() const noexcept { return y_points_; }
  /// alpha_y: a |-> [y in alpha(a)], a character of A.
  Character alpha_point(const Point& y) const;
  /// Whether y lies in alpha(a).
  bool contains(const Point& y, const Element& a) const;
  const PointSet& x_alpha() const noexcept { return x_alpha_; }
  const MapLevels& levels() const noexcept { return levels_; }

  friend bool operator==(const MzMap& a, const MzMap& b) {
    return a.algebra_ == b.algebra_ && a.table_ == b.table_ && a.y_points_ == b.y_points_;
  }

 private:
  MzMap(Algebra algebra, std::optional<Homomorphism> table, Shape y_shape, PointSet y_points);
  Algebra algebra_;
  std::optional<Homomorphism> table_;
  Shape y_shape_;
  PointSet y_points_;
  PointSet x_alpha_;
  MapLevels levels_;
};

/// The z / mz / lmz decision for a user table.  Throws FiniteBackendOnly
/// unless domain and codomain are finite.
MapLevels validate_map_levels(const Homomorphism& alpha);

/// (phi, sigma) with sigma: P(Y) -> P(Y') complete, stored as its dual
/// function g: Y' -> Y.  Condition: alpha' o phi = sigma o alpha.
class MBoolMorphism {
 public:
  static MBoolMorphism make(MzMap source, MzMap target, Homomorphism map, PointMap sigma_dual);
  static MBoolMorphism unchecked(MzMap source, MzMap target, Homomorphism map, PointMap sigma_dual);
  static MBoolMorphism identity(const MzMap& m);

  const MzMap& source() const noexcept { return source_; }
  const MzMap& target() const noexcept { return target_; }
  const Homomorphism& map() const noexcept { return map_; }
  const PointMap& sigma_dual() const noexcept { return sigma_dual_; }

  friend bool operator==(const MBoolMorphism& a, const MBoolMorphism& b);

 private:
  MBoolMorphism(MzMap source, MzMap target, Homomorphism map, PointMap sigma_dual);
  MzMap source_;
  MzMap target_;
  Homomorphism map_;
  PointMap sigma_dual_;
};

/// First y' with alpha'_{y'} o phi != alpha_{g(y')}, or g(y') outside Y.
std::optional<Point> mbool_violation(const MBoolMorphism& m);
MBoolMorphism compose(const MBoolMorphism& outer, const MBoolMorphism& inner);

MzMap to_mz_map(const DzAlgebra& d);
MBoolMorphism to_mz_map(const DzMorphism& m);
/// (CO(X_alpha), X_alpha-hat).
DzAlgebra from_mz_map(const MzMap& m);
DzMorphism from_mz_map(const MBoolMorphism& m);

/// f_sigma: X_alpha' -> X_alpha as a map of classified spaces,
/// alpha'_{y'} |-> alpha_{At(sigma)(y')}.
SpaceMap f_sigma(const MBoolMorphism& m);

/// The isomorphism d -> G'(F'(d)) built from the Stone map, and its inverse.
struct DzIsomorphism {
  DzMorphism forward;
  DzMorphism backward;
};
DzIsomorphism stone_isomorphism(const DzAlgebra& d);
/// Both composites are identities and the forward map sends a to the clopen
/// that s_A^X(a) becomes in G'(F'(d)).
CoherenceVerdict check_stone_isomorphism(const DzAlgebra& d);

// ---------------------------------------------------------------------------
// Tarski duality on finite sets.

/// P(n): the powerset of {0, ..., n-1}, atoms labelled "0".."n-1".
Algebra powerset(Index n);
/// P(f): P(X') -> P(X), M |-> f^{-1}(M), for f: X -> X' given as a vector of
/// images with |X'| = target_size.
Homomorphism powerset_map(const std::vector<Index>& f, Index target_size);
/// The atoms of a finite algebra.
std::vector<Element> atoms_of(const Algebra& b);
/// At(sigma): At(B') -> At(B), x' |-> meet of {b : x' <= sigma(b)}, with
/// atoms numbered as in atoms_of.  Throws FiniteBackendOnly.
std::vector<Index> atoms_map(const Homomorphism& sigma);

}  // namespace stonedual
