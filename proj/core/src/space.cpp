#include "stonedual/space.hpp"

#include <algorithm>
#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

bool SpacePresentation::is_compact() const noexcept {
  return std::none_of(blocks.begin(), blocks.end(),
                      [](const SpaceBlock& b) { return b.kind == SpaceBlockKind::DiscreteCountable; });
}

bool SpacePresentation::has_representable_clopens() const noexcept { return is_compact(); }

Shape SpacePresentation::shape() const {
  Shape out;
  for (const SpaceBlock& b : blocks) {
    switch (b.kind) {
      case SpaceBlockKind::FiniteDiscrete: out.push_back(Universe::finite(b.points)); break;
      case SpaceBlockKind::OnePointCompactification: out.push_back(Universe::naturals()); break;
      case SpaceBlockKind::DiscreteCountable:
        throw Error(ErrorCode::UnrepresentableCO,
                    "a countable discrete block has the full powerset of N as its clopen algebra");
    }
  }
  return out;
}

bool SpacePresentation::contains(const Point& p) const noexcept {
  if (p.block >= blocks.size()) return false;
  const SpaceBlock& b = blocks[p.block];
  switch (b.kind) {
    case SpaceBlockKind::FiniteDiscrete: return p.index && *p.index < b.points;
    case SpaceBlockKind::OnePointCompactification: return true;
    case SpaceBlockKind::DiscreteCountable: return p.index.has_value();
  }
  return false;
}

std::string SpacePresentation::describe() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k) out << " + ";
    switch (blocks[k].kind) {
      case SpaceBlockKind::FiniteDiscrete: out << "discrete(" << blocks[k].points << ')'; break;
      case SpaceBlockKind::OnePointCompactification: out << "N+inf"; break;
      case SpaceBlockKind::DiscreteCountable: out << "discrete(N)"; break;
    }
  }
  out << ']';
  return out.str();
}

SpaceMap::SpaceMap(SpacePresentation source, SpacePresentation target, PointMap rule)
    : source_(std::move(source)), target_(std::move(target)), rule_(std::move(rule)) {
  if (rule_.source() != source_.shape() || rule_.target() != target_.shape()) {
    throw Error(ErrorCode::DomainMismatch, "space map rule does not match " + source_.describe() + " -> " +
                                               target_.describe());
  }
}

SpaceMap SpaceMap::identity(const SpacePresentation& space) {
  return SpaceMap(space, space, PointMap::identity(space.shape()));
}

SpaceMap compose(const SpaceMap& outer, const SpaceMap& inner) {
  if (inner.target() != outer.source()) {
    throw Error(ErrorCode::DomainMismatch, "cannot compose space maps " + inner.target().describe() + " and " +
                                               outer.source().describe());
  }
  return SpaceMap(inner.source(), outer.target(), compose(outer.rule(), inner.rule()));
}

Algebra co_algebra(const SpacePresentation& space) {
  std::vector<Factor> factors;
  for (const SpaceBlock& b : space.blocks) {
    switch (b.kind) {
      case SpaceBlockKind::FiniteDiscrete: {
        std::vector<std::string> labels;
        for (Index i = 0; i < b.points; ++i) labels.push_back(std::to_string(i));
        factors.push_back(Factor::finite(std::move(labels)));
        break;
      }
      case SpaceBlockKind::OnePointCompactification:
        factors.push_back(Factor::finite_cofinite(Universe::naturals()));
        break;
      case SpaceBlockKind::DiscreteCountable:
        throw Error(ErrorCode::UnrepresentableCO,
                    "CO of a countable discrete space is the full powerset of N, outside the representable "
                    "backends");
    }
  }
  if (factors.empty()) return Algebra::finite({});
  if (factors.size() == 1) return Algebra(AlgebraDescriptor{false, std::move(factors)});
  return Algebra::product(std::move(factors));
}

bool point_in_clopen(const SpacePresentation& space, const Point& x, const Element& u) {
  if (!space.contains(x)) {
    throw Error(ErrorCode::ForeignElement, "point " + to_string(x) + " is not in " + space.describe());
  }
  co_algebra(space).check(u);
  const Subset& part = u.parts[x.block];
  // A cofinite clopen of a one-point compactification contains the limit.
  return x.index ? part.contains(*x.index) : part.cofinite;
}

Character hat_character(const SpacePresentation& space, const Point& x) {
  if (!space.contains(x)) {
    throw Error(ErrorCode::ForeignElement, "point " + to_string(x) + " is not in " + space.describe());
  }
  co_algebra(space);  // rejects unrepresentable clopen algebras
  // CO(X) has one block per block of X; singletons of isolated points are
  // atoms, and the limit sits in exactly the cofinite clopens.
  return x;
}

HatMap hat_map(const SpacePresentation& space) {
  const Shape shape = space.shape();
  const Algebra co = co_algebra(space);
  std::vector<BlockRule> rules(shape.size());
  for (Index k = 0; k < shape.size(); ++k) {
    if (shape[k].is_infinite()) {
      rules[k].fallback = IdentityDefault{k};
    } else {
      for (Index i = 0; i < shape[k].size(); ++i) {
        rules[k].table.emplace(i, hat_character(space, Point::at(k, i)));
      }
    }
  }
  PointMap map(shape, co.shape(), std::move(rules));
  PointSet image = map.image(PointSet::full(shape));
  const bool separating = !first_collision(map, PointSet::full(shape)).has_value();
  return HatMap{std::move(map), std::move(image), separating};
}

Homomorphism clopen_map(const SpaceMap& f) {
  const HatMap from = hat_map(f.source());
  const HatMap to = hat_map(f.target());
  // S(CO(f)) is hat_Y o f o hat_X^{-1}.  Hat maps of presented spaces keep
  // block and index, so hat_X^{-1} has the identity rule.
  if (from.map != PointMap::identity(from.map.source())) {
    throw Error(ErrorCode::NotValidated, "hat map of " + f.source().describe() + " is not index-preserving");
  }
  const PointMap back = PointMap::identity(from.map.target());
  const PointMap dual = compose(to.map, compose(f.rule(), back));
  return Homomorphism(co_algebra(f.target()), co_algebra(f.source()), dual);
}

// ---------------------------------------------------------------------------

Character Subspace::to_ambient(const Point& p) const {
  if (!space.contains(p)) {
    throw Error(ErrorCode::ForeignElement, "point " + to_string(p) + " is not in " + space.describe());
  }
  const BlockSet& b = points.blocks.at(p.block);
  if (!p.index) return Point::limit(p.block);
  if (!b.principal.cofinite && *p.index == b.principal.support.size()) {
    return Point::limit(p.block);  // the limit, listed after the finitely many principal points
  }
  return Point::at(p.block, *select(b.principal, *p.index));
}

std::optional<Point> Subspace::to_space(const Character& x) const {
  if (!points.contains(x)) return std::nullopt;
  const BlockSet& b = points.blocks[x.block];
  if (!x.index) {
    if (b.principal.cofinite) return Point::limit(x.block);
    return Point::at(x.block, static_cast<Index>(b.principal.support.size()));
  }
  return Point::at(x.block, rank(b.principal, *x.index));
}

bool Subspace::identity_indexed() const {
  for (std::size_t k = 0; k < points.blocks.size(); ++k) {
    const BlockSet& b = points.blocks[k];
    if (b.principal.cofinite && !b.principal.support.empty()) return false;
  }
  return true;
}

Subspace classify(const Algebra& algebra, const PointSet& x) {
  check_point_set(algebra.shape(), x);
  SpacePresentation space;
  for (const BlockSet& b : x.blocks) {
    if (!b.principal.cofinite) {
      space.blocks.push_back(SpaceBlock::finite(static_cast<Index>(b.principal.support.size()) + (b.limit ? 1 : 0)));
    } else if (b.limit) {
      space.blocks.push_back(SpaceBlock::one_point_compactification());
    } else {
      space.blocks.push_back(SpaceBlock::discrete_countable());
    }
  }
  return Subspace{algebra, x, std::move(space)};
}

SpaceMap induced_space_map(const Subspace& from, const Subspace& to, const PointMap& ambient) {
  const Shape src = from.space.shape();
  const Shape dst = to.space.shape();
  // Image character -> point of the target presentation.
  auto carry = [&](const Character& image) {
    auto p = to.to_space(image);
    if (!p) {
      throw Error(ErrorCode::NotValidated, "image " + to_string(image) + " lies outside the target subspace");
    }
    return *p;
  };
  std::vector<BlockRule> rules(src.size());
  for (Index k = 0; k < src.size(); ++k) {
    if (!src[k].is_infinite()) {
      for (Index i = 0; i < src[k].size(); ++i) rules[k].table.emplace(i, carry(ambient(from.to_ambient(Point::at(k, i)))));
      continue;
    }
    const BlockSet& members = from.points.blocks[k];
    if (!members.principal.is_all()) {
      throw Error(ErrorCode::UnrepresentableCO, "block " + std::to_string(k) + " is not identity-indexed");
    }
    const BlockRule& rule = ambient.rules()[k];
    for (const auto& [i, c] : rule.table) rules[k].table.emplace(i, carry(c));
    if (const auto* c = std::get_if<ConstantDefault>(&*rule.fallback)) {
      rules[k].fallback = ConstantDefault{carry(c->target)};
    } else {
      const Index b = std::get<IdentityDefault>(*rule.fallback).block;
      if (!dst[b].is_infinite() || !to.points.blocks[b].principal.is_all()) {
        throw Error(ErrorCode::UnrepresentableCO, "identity-like rule lands in a block that is not identity-indexed");
      }
      rules[k].fallback = IdentityDefault{b};
    }
  }
  return SpaceMap(from.space, to.space, PointMap(src, dst, std::move(rules)));
}

}  // namespace stonedual
