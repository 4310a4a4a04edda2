#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/points.hpp"

namespace stonedual {

enum class SpaceBlockKind {
  FiniteDiscrete,            // n isolated points
  OnePointCompactification,  // the naturals plus a limit point
  DiscreteCountable,         // the naturals, discrete: its clopen algebra is a full powerset
};

struct SpaceBlock {
  SpaceBlockKind kind = SpaceBlockKind::FiniteDiscrete;
  Index points = 0;  // FiniteDiscrete only

  static SpaceBlock finite(Index n) { return {SpaceBlockKind::FiniteDiscrete, n}; }
  static SpaceBlock one_point_compactification() { return {SpaceBlockKind::OnePointCompactification, 0}; }
  static SpaceBlock discrete_countable() { return {SpaceBlockKind::DiscreteCountable, 0}; }

  friend auto operator<=>(const SpaceBlock&, const SpaceBlock&) = default;
};

/// A topological coproduct of finite discrete spaces, one-point
/// compactifications of the naturals, and (as a boundary case) countable
/// discrete spaces.  Points are `Point`s: block plus index, or the limit.
struct SpacePresentation {
  std::vector<SpaceBlock> blocks;

  bool is_compact() const noexcept;
  bool has_representable_clopens() const noexcept;
  /// Shape of the point structure; throws UnrepresentableCO when a block is
  /// discrete countable.
  Shape shape() const;
  bool contains(const Point& p) const noexcept;
  std::string describe() const;

  friend auto operator<=>(const SpacePresentation&, const SpacePresentation&) = default;
};

/// A continuous map between two presented spaces (exception-table class).
class SpaceMap {
 public:
  SpaceMap(SpacePresentation source, SpacePresentation target, PointMap rule);

  static SpaceMap identity(const SpacePresentation& space);

  const SpacePresentation& source() const noexcept { return source_; }
  const SpacePresentation& target() const noexcept { return target_; }
  const PointMap& rule() const noexcept { return rule_; }
  Point operator()(const Point& p) const { return rule_(p); }

  friend bool operator==(const SpaceMap&, const SpaceMap&) = default;

 private:
  SpacePresentation source_;
  SpacePresentation target_;
  PointMap rule_;
};

SpaceMap compose(const SpaceMap& outer, const SpaceMap& inner);

/// CO(X): Finite with n atoms for a finite block, FC(N) for a one-point
/// compactification, their product for a coproduct, the one-element algebra
/// for the empty space.  Throws UnrepresentableCO on a discrete countable
/// block, whose clopen algebra is the full powerset of the naturals.
Algebra co_algebra(const SpacePresentation& space);

/// Whether point x lies in the clopen set U, where U is an element of
/// co_algebra(space): a finite set of principal points, or a cofinite set
/// of principal points together with the limit.
bool point_in_clopen(const SpacePresentation& space, const Point& x, const Element& u);

/// x-hat: the character of CO(X) that sends U to 1 exactly when x is in U.
Character hat_character(const SpacePresentation& space, const Point& x);

struct HatMap {
  PointMap map;           // X -> S(CO(X))
  PointSet image;         // X-hat
  bool t0_separating = true;
};
HatMap hat_map(const SpacePresentation& space);

/// CO(f): CO(Y) -> CO(X), U |-> f^{-1}(U).
Homomorphism clopen_map(const SpaceMap& f);

/// A subset X of S(A) seen as a space in its own right: the presentation it
/// is homeomorphic to, and the point correspondence.
struct Subspace {
  Algebra algebra;
  PointSet points;
  SpacePresentation space;

  /// Presentation point -> character of A.
  Character to_ambient(const Point& p) const;
  /// Character of A -> presentation point; nullopt when outside X.
  std::optional<Point> to_space(const Character& x) const;
  /// True when every infinite block keeps its indices unchanged (the
  /// principal part is all of the naturals).
  bool identity_indexed() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.algebra == b.algebra && a.points == b.points && a.space == b.space;
  }
};

/// Classifies each block of X: finitely many points give a finite discrete
/// block, a cofinite principal part with the limit gives a one-point
/// compactification, and without the limit a discrete countable block.
Subspace classify(const Algebra& algebra, const PointSet& x);

/// The map between two classified subspaces induced by a pointwise map on
/// ambient characters.  `ambient` is used for the infinite blocks, which must
/// be identity-indexed.  Throws UnrepresentableCO otherwise.
SpaceMap induced_space_map(const Subspace& from, const Subspace& to, const PointMap& ambient);

}  // namespace stonedual
