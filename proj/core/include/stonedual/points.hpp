#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stonedual/subset.hpp"

namespace stonedual {

/// A point of a block-structured space.  In a Stone space S(A) the points are
/// the characters A -> 2: `index` names an atom or the principal character
/// at that index, and an empty `index` is the free character of an infinite
/// finite-cofinite block, which is also the limit point of its
/// one-point compactification.
struct Point {
  Index block = 0;
  std::optional<Index> index;

  static Point at(Index block, Index i) { return {block, i}; }
  static Point limit(Index block) { return {block, std::nullopt}; }
  bool is_limit() const noexcept { return !index.has_value(); }

  friend auto operator<=>(const Point&, const Point&) = default;
};

using Character = Point;

std::string to_string(const Point& p);

/// Per-block universes.  A block with a finite universe is a finite discrete
/// set of points; an infinite block is the one-point compactification of the
/// naturals (principal points plus one limit point).
using Shape = std::vector<Universe>;

bool shape_contains(const Shape& shape, const Point& p);

/// Points of one block: a finite-or-cofinite set of isolated points plus the
/// limit flag.  The flag is always false for a finite block.
struct BlockSet {
  Subset principal;
  bool limit = false;

  friend auto operator<=>(const BlockSet&, const BlockSet&) = default;
};

struct PointSet {
  std::vector<BlockSet> blocks;

  static PointSet empty(const Shape& shape);
  static PointSet full(const Shape& shape);
  static PointSet of(const Shape& shape, const std::vector<Point>& points);

  bool contains(const Point& p) const;
  /// One past the largest index mentioned by any block.
  Index bound() const noexcept;

  friend auto operator<=>(const PointSet&, const PointSet&) = default;
};

/// Throws NotASubset / ForeignElement style errors when `x` is not a canonical
/// point set of `shape`.
void check_point_set(const Shape& shape, const PointSet& x);
bool is_canonical_point_set(const Shape& shape, const PointSet& x);

PointSet intersect(const PointSet& a, const PointSet& b);
PointSet unite(const PointSet& a, const PointSet& b);
PointSet complement(const Shape& shape, const PointSet& a);
bool is_subset(const PointSet& a, const PointSet& b);
bool is_empty(const PointSet& a);

/// A finite list of points that decides every "uniform beyond `bound`"
/// question about `x`: all members below `bound`, the first member at or past
/// it in each infinite block, and each limit point.
std::vector<Point> decisive_points(const Shape& shape, const PointSet& x, Index bound);

std::string to_string(const PointSet& x);

// ---------------------------------------------------------------------------
// Continuous maps between block-structured spaces.

/// Every principal point outside the exception table goes to `target`; the
/// limit point goes there too.
struct ConstantDefault {
  Point target;
  friend auto operator<=>(const ConstantDefault&, const ConstantDefault&) = default;
};

/// Every principal point i outside the exception table goes to principal
/// point i of `block` (an infinite target block); the limit goes to its limit.
struct IdentityDefault {
  Index block = 0;
  friend auto operator<=>(const IdentityDefault&, const IdentityDefault&) = default;
};

using BlockDefault = std::variant<ConstantDefault, IdentityDefault>;

/// Rule for one source block.  Finite blocks carry a complete table and no
/// default; infinite blocks carry a default plus finitely many exceptions.
struct BlockRule {
  std::map<Index, Point> table;
  std::optional<BlockDefault> fallback;

  friend bool operator==(const BlockRule&, const BlockRule&) = default;
};

/// A continuous map between two shapes, in the exception-table class:
/// finite tables on finite blocks; on infinite blocks finitely many
/// exceptions over an identity-like or constant default.  This class is
/// closed under composition, and every member is continuous.  Construction
/// validates and canonicalizes, so equal maps have equal rules.
class PointMap {
 public:
  PointMap(Shape source, Shape target, std::vector<BlockRule> rules);

  static PointMap identity(const Shape& shape);

  Point operator()(const Point& p) const;

  const Shape& source() const noexcept { return source_; }
  const Shape& target() const noexcept { return target_; }
  const std::vector<BlockRule>& rules() const noexcept { return rules_; }

  PointSet preimage(const PointSet& y) const;
  PointSet image(const PointSet& x) const;
  /// One past the largest index mentioned by any table key or target.
  Index bound() const noexcept;

  friend bool operator==(const PointMap&, const PointMap&) = default;

 private:
  Shape source_;
  Shape target_;
  std::vector<BlockRule> rules_;
};

/// outer after inner.  Throws DomainMismatch when inner's target shape is not
/// outer's source shape.
PointMap compose(const PointMap& outer, const PointMap& inner);

/// First x in `x` with f(x) != g(x), if any.
std::optional<Point> first_disagreement(const PointMap& f, const PointMap& g, const PointSet& x);
/// First x in `x` with f(x) outside `y`, if any.
std::optional<Point> first_escape(const PointMap& f, const PointSet& x, const PointSet& y);
/// First pair of distinct points of `x` with the same image, if any.
std::optional<std::pair<Point, Point>> first_collision(const PointMap& f, const PointSet& x);

}  // namespace stonedual
