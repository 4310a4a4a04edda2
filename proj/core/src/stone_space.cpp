#include "stonedual/stone_space.hpp"

#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

std::vector<Character> characters(const Algebra& algebra, Index bound) {
  std::vector<Character> out;
  for (Index k = 0; k < algebra.block_count(); ++k) {
    const Universe& u = algebra.shape()[k];
    const Index n = u.is_infinite() ? bound : u.size();
    for (Index i = 0; i < n; ++i) out.push_back(Point::at(k, i));
    if (u.is_infinite()) out.push_back(Point::limit(k));
  }
  return out;
}

bool evaluate(const Algebra& algebra, const Character& x, const Element& a) {
  algebra.check(a);
  if (!shape_contains(algebra.shape(), x)) {
    throw Error(ErrorCode::ForeignElement, "character " + to_string(x) + " is not a point of S(" +
                                               algebra.describe() + ")");
  }
  const Subset& part = a.parts[x.block];
  return x.index ? part.contains(*x.index) : part.cofinite;
}

PointSet stone_trace(const Algebra& algebra, const PointSet& x, const Element& a) {
  return intersect(x, stone_set(algebra, a));
}

bool is_open(const Shape& shape, const PointSet& x) {
  for (std::size_t k = 0; k < shape.size(); ++k) {
    // The limit point needs a cofinite neighbourhood inside x.
    if (shape[k].is_infinite() && x.blocks[k].limit && !x.blocks[k].principal.cofinite) return false;
  }
  return true;
}

bool is_closed(const Shape& shape, const PointSet& x) { return is_open(shape, complement(shape, x)); }

bool is_compact(const Shape& shape, const PointSet& x) {
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (shape[k].is_infinite() && !x.blocks[k].limit && x.blocks[k].principal.cofinite) return false;
  }
  return true;
}

PointSet closure(const Shape& shape, const PointSet& x) {
  PointSet out = x;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (shape[k].is_infinite() && x.blocks[k].principal.cofinite) out.blocks[k].limit = true;
  }
  return out;
}

PointSet interior(const Shape& shape, const PointSet& x) {
  PointSet out = x;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (!x.blocks[k].principal.cofinite) out.blocks[k].limit = false;
  }
  return out;
}

bool is_dense(const Shape& shape, const PointSet& x) { return closure(shape, x) == PointSet::full(shape); }

bool is_clopen_in(const Shape& shape, const PointSet& x, const PointSet& u) {
  if (!is_subset(u, x)) {
    throw Error(ErrorCode::NotASubset, to_string(u) + " is not contained in " + to_string(x));
  }
  const PointSet rest = intersect(x, complement(shape, u));
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (!shape[k].is_infinite()) continue;
    // Inside x the limit point is isolated unless x has infinitely many
    // principal points in this block; then every relative neighbourhood of it
    // is cofinite in x.
    const bool limit_accumulates = x.blocks[k].limit && x.blocks[k].principal.cofinite;
    if (!limit_accumulates) continue;
    if (u.blocks[k].limit && !u.blocks[k].principal.cofinite) return false;
    if (rest.blocks[k].limit && !rest.blocks[k].principal.cofinite) return false;
  }
  return true;
}

std::string SymbolicClopen::describe() const {
  std::ostringstream out;
  out << pattern.describe() << " among principal points " << to_string(within) << " of block "
      << block;
  return out.str();
}

TraceVerdict traces_are_all_clopens(const Shape& shape, const PointSet& x, ResidueClass pattern) {
  for (Index k = 0; k < shape.size(); ++k) {
    if (shape[k].is_infinite() && x.blocks[k].principal.cofinite && !x.blocks[k].limit) {
      return {false, SymbolicClopen{k, x.blocks[k].principal, pattern}};
    }
  }
  return {};
}

Index first_mismatch(const Algebra& algebra, const PointSet& x, const Element& a, const SymbolicClopen& clopen) {
  const Subset trace = stone_trace(algebra, x, a).blocks.at(clopen.block).principal;
  const Index limit = std::max(trace.bound(), clopen.within.bound()) + 2 * clopen.pattern.modulus + 1;
  for (Index i = 0; i < limit; ++i) {
    if (trace.contains(i) != clopen.contains(i)) return i;
  }
  throw Error(ErrorCode::NotValidated, "trace of " + algebra.describe(a) + " realizes " + clopen.describe());
}

const PointMap& dual_point_map(const Homomorphism& phi) { return phi.dual(); }

std::vector<Element> separating_elements(const Algebra& algebra, const Character& x, const Character& y) {
  std::vector<Element> out;
  if (x == y) return out;
  if (x.block != y.block) {
    out.push_back(algebra.block_unit(x.block));
    out.push_back(algebra.block_unit(y.block));
    return out;
  }
  if (x.index) out.push_back(algebra.atom(x.block, *x.index));
  if (y.index) out.push_back(algebra.atom(y.block, *y.index));
  return out;
}

}  // namespace stonedual
