#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/points.hpp"

namespace stonedual {

/// Characters of A.  Finite blocks give one character per atom; an infinite
/// finite-cofinite block gives its first `bound` principal characters and
/// then the free one.  Every character of a representable algebra is of one
/// of these forms (principal or free), which is what makes S(A) computable.
std::vector<Character> characters(const Algebra& algebra, Index bound);

/// x(a).  Principal/atom characters test membership, the free character
/// tests cofiniteness.
bool evaluate(const Algebra& algebra, const Character& x, const Element& a);

/// s_A^X(a) = X intersected with s_A(a).
PointSet stone_trace(const Algebra& algebra, const PointSet& x, const Element& a);

// Topology of a block-structured space: finite blocks are discrete, infinite
// blocks are one-point compactifications of the naturals.
bool is_open(const Shape& shape, const PointSet& x);
bool is_closed(const Shape& shape, const PointSet& x);
bool is_compact(const Shape& shape, const PointSet& x);
PointSet closure(const Shape& shape, const PointSet& x);
PointSet interior(const Shape& shape, const PointSet& x);
bool is_dense(const Shape& shape, const PointSet& x);

/// Whether u is clopen in the subspace x; throws NotASubset unless u is
/// contained in x.
bool is_clopen_in(const Shape& shape, const PointSet& x, const PointSet& u);

/// An infinite, coinfinite set of principal points of one block: the members
/// of `within` that fall into `pattern`.
struct SymbolicClopen {
  Index block = 0;
  Subset within;
  ResidueClass pattern;

  bool contains(Index i) const { return within.contains(i) && pattern.contains(i); }
  std::string describe() const;
};

/// Decides whether every clopen subset of the subspace x is the trace of a
/// clopen of the whole space.  This fails exactly on an infinite block whose
/// trace is infinite and discrete (cofinite principal part without the limit
/// point); the witness is then a symbolic infinite-coinfinite clopen.
struct TraceVerdict {
  bool complete = true;
  std::optional<SymbolicClopen> witness;
};
TraceVerdict traces_are_all_clopens(const Shape& shape, const PointSet& x,
                                    ResidueClass pattern = ResidueClass{});

/// First index where the trace of `a` on x differs from the symbolic clopen.
/// Such an index always exists, which is how a sampled element is shown not
/// to realize the clopen.
Index first_mismatch(const Algebra& algebra, const PointSet& x, const Element& a, const SymbolicClopen& clopen);

/// S(phi): S(codomain) -> S(domain), y |-> y o phi.
const PointMap& dual_point_map(const Homomorphism& phi);

/// Elements whose values tell the two characters apart (block units, and the
/// atoms at principal indices).  Empty when x == y.
std::vector<Element> separating_elements(const Algebra& algebra, const Character& x, const Character& y);

}  // namespace stonedual
