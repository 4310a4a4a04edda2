#include "stonedual/points.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

std::string to_string(const Point& p) {
  std::ostringstream out;
  out << "b" << p.block << ':';
  if (p.index) {
    out << *p.index;
  } else {
    out << "free";
  }
  return out.str();
}

bool shape_contains(const Shape& shape, const Point& p) {
  if (p.block >= shape.size()) return false;
  const Universe& u = shape[p.block];
  if (!p.index) return u.is_infinite();
  return u.in_range(*p.index);
}

PointSet PointSet::empty(const Shape& shape) {
  return PointSet{std::vector<BlockSet>(shape.size())};
}

PointSet PointSet::full(const Shape& shape) {
  PointSet out;
  for (const Universe& u : shape) out.blocks.push_back({u.full(), u.is_infinite()});
  return out;
}

PointSet PointSet::of(const Shape& shape, const std::vector<Point>& points) {
  std::vector<std::vector<Index>> members(shape.size());
  PointSet out = empty(shape);
  for (const Point& p : points) {
    if (!shape_contains(shape, p)) {
      throw Error(ErrorCode::ForeignElement, "point " + to_string(p) + " is not in the space");
    }
    if (p.index) {
      members[p.block].push_back(*p.index);
    } else {
      out.blocks[p.block].limit = true;
    }
  }
  for (std::size_t k = 0; k < shape.size(); ++k) {
    out.blocks[k].principal = Subset::finite(std::move(members[k]));
  }
  return out;
}

bool PointSet::contains(const Point& p) const {
  if (p.block >= blocks.size()) return false;
  const BlockSet& b = blocks[p.block];
  return p.index ? b.principal.contains(*p.index) : b.limit;
}

Index PointSet::bound() const noexcept {
  Index out = 0;
  for (const BlockSet& b : blocks) out = std::max(out, b.principal.bound());
  return out;
}

bool is_canonical_point_set(const Shape& shape, const PointSet& x) {
  if (x.blocks.size() != shape.size()) return false;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (!shape[k].is_canonical(x.blocks[k].principal)) return false;
    if (x.blocks[k].limit && !shape[k].is_infinite()) return false;
  }
  return true;
}

void check_point_set(const Shape& shape, const PointSet& x) {
  if (!is_canonical_point_set(shape, x)) {
    throw Error(ErrorCode::ForeignElement, "point set " + to_string(x) + " does not belong to this space");
  }
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    out.blocks.push_back({intersect(a.blocks[k].principal, b.blocks[k].principal),
                          a.blocks[k].limit && b.blocks[k].limit});
  }
  return out;
}

PointSet unite(const PointSet& a, const PointSet& b) {
  PointSet out;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    out.blocks.push_back({unite(a.blocks[k].principal, b.blocks[k].principal),
                          a.blocks[k].limit || b.blocks[k].limit});
  }
  return out;
}

PointSet complement(const Shape& shape, const PointSet& a) {
  PointSet out;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    out.blocks.push_back({shape[k].complement(a.blocks[k].principal),
                          shape[k].is_infinite() && !a.blocks[k].limit});
  }
  return out;
}

bool is_subset(const PointSet& a, const PointSet& b) {
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    if (!is_subset(a.blocks[k].principal, b.blocks[k].principal)) return false;
    if (a.blocks[k].limit && !b.blocks[k].limit) return false;
  }
  return true;
}

bool is_empty(const PointSet& a) {
  return std::all_of(a.blocks.begin(), a.blocks.end(),
                     [](const BlockSet& b) { return b.principal.is_empty() && !b.limit; });
}

std::vector<Point> decisive_points(const Shape& shape, const PointSet& x, Index bound) {
  std::vector<Point> out;
  for (Index k = 0; k < shape.size(); ++k) {
    const BlockSet& b = x.blocks[k];
    if (!b.principal.cofinite) {
      for (Index i : b.principal.support) out.push_back(Point::at(k, i));
    } else {
      // Members below the bound, then the first member at or past it.
      Index i = 0;
      for (; i < bound; ++i) {
        if (b.principal.contains(i)) out.push_back(Point::at(k, i));
      }
      while (!b.principal.contains(i)) ++i;
      out.push_back(Point::at(k, i));
    }
    if (b.limit) out.push_back(Point::limit(k));
  }
  return out;
}

std::string to_string(const PointSet& x) {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    if (k) out << ", ";
    out << to_string(x.blocks[k].principal);
    if (x.blocks[k].limit) out << "+free";
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

Point default_image(const BlockDefault& d, std::optional<Index> index) {
  if (const auto* c = std::get_if<ConstantDefault>(&d)) return c->target;
  const auto& id = std::get<IdentityDefault>(d);
  return index ? Point::at(id.block, *index) : Point::limit(id.block);
}

}  // namespace

PointMap::PointMap(Shape source, Shape target, std::vector<BlockRule> rules)
    : source_(std::move(source)), target_(std::move(target)), rules_(std::move(rules)) {
  if (rules_.size() != source_.size()) {
    throw Error(ErrorCode::MalformedMorphism, "point map needs exactly one rule per source block");
  }
  for (Index k = 0; k < source_.size(); ++k) {
    BlockRule& rule = rules_[k];
    const Universe& u = source_[k];
    for (const auto& [i, p] : rule.table) {
      if (!u.in_range(i)) {
        throw Error(ErrorCode::MalformedMorphism,
                    "rule for block " + std::to_string(k) + " maps index " + std::to_string(i) +
                        " outside the block");
      }
      if (!shape_contains(target_, p)) {
        throw Error(ErrorCode::MalformedMorphism, "image " + to_string(p) + " is not a target point");
      }
    }
    if (!u.is_infinite()) {
      if (rule.fallback) {
        throw Error(ErrorCode::MalformedMorphism,
                    "finite block " + std::to_string(k) + " must be given by a full table");
      }
      if (rule.table.size() != u.size()) {
        throw Error(ErrorCode::MalformedMorphism,
                    "table for finite block " + std::to_string(k) + " is incomplete");
      }
      continue;
    }
    if (!rule.fallback) {
      throw Error(ErrorCode::MalformedMorphism,
                  "infinite block " + std::to_string(k) + " needs a default rule");
    }
    if (const auto* c = std::get_if<ConstantDefault>(&*rule.fallback)) {
      if (!shape_contains(target_, c->target)) {
        throw Error(ErrorCode::MalformedMorphism, "constant " + to_string(c->target) + " is not a target point");
      }
    } else {
      const Index b = std::get<IdentityDefault>(*rule.fallback).block;
      if (b >= target_.size() || !target_[b].is_infinite()) {
        throw Error(ErrorCode::MalformedMorphism,
                    "identity-like default needs an infinite target block, got " + std::to_string(b));
      }
    }
    // Canonical form: drop exceptions that agree with the default.
    for (auto it = rule.table.begin(); it != rule.table.end();) {
      if (it->second == default_image(*rule.fallback, it->first)) {
        it = rule.table.erase(it);
      } else {
        ++it;
      }
    }
  }
}

PointMap PointMap::identity(const Shape& shape) {
  std::vector<BlockRule> rules(shape.size());
  for (Index k = 0; k < shape.size(); ++k) {
    if (shape[k].is_infinite()) {
      rules[k].fallback = IdentityDefault{k};
    } else {
      for (Index i = 0; i < shape[k].size(); ++i) rules[k].table.emplace(i, Point::at(k, i));
    }
  }
  return PointMap(shape, shape, std::move(rules));
}

Point PointMap::operator()(const Point& p) const {
  if (!shape_contains(source_, p)) {
    throw Error(ErrorCode::ForeignElement, "point " + to_string(p) + " is outside the map's domain");
  }
  const BlockRule& rule = rules_[p.block];
  if (p.index) {
    if (auto it = rule.table.find(*p.index); it != rule.table.end()) return it->second;
  }
  return default_image(*rule.fallback, p.index);
}

PointSet PointMap::preimage(const PointSet& y) const {
  PointSet out = PointSet::empty(source_);
  for (Index k = 0; k < source_.size(); ++k) {
    const BlockRule& rule = rules_[k];
    std::vector<Index> hits;
    std::vector<Index> keys;
    for (const auto& [i, p] : rule.table) {
      keys.push_back(i);
      if (y.contains(p)) hits.push_back(i);
    }
    Subset base;
    if (rule.fallback) {
      if (const auto* c = std::get_if<ConstantDefault>(&*rule.fallback)) {
        base = y.contains(c->target) ? Subset::all() : Subset::none();
      } else {
        base = y.blocks[std::get<IdentityDefault>(*rule.fallback).block].principal;
      }
      base = difference(base, Subset::finite(keys));
    }
    out.blocks[k].principal = source_[k].normalize(unite(base, Subset::finite(std::move(hits))));
    out.blocks[k].limit = source_[k].is_infinite() && y.contains((*this)(Point::limit(k)));
  }
  return out;
}

PointSet PointMap::image(const PointSet& x) const {
  std::vector<Point> singles;
  PointSet out = PointSet::empty(target_);
  for (Index k = 0; k < source_.size(); ++k) {
    const BlockRule& rule = rules_[k];
    const BlockSet& members = x.blocks[k];
    std::vector<Index> keys;
    for (const auto& [i, p] : rule.table) {
      keys.push_back(i);
      if (members.principal.contains(i)) singles.push_back(p);
    }
    if (rule.fallback) {
      const Subset rest = difference(members.principal, Subset::finite(keys));
      if (!rest.is_empty()) {
        if (const auto* c = std::get_if<ConstantDefault>(&*rule.fallback)) {
          singles.push_back(c->target);
        } else {
          BlockSet& tb = out.blocks[std::get<IdentityDefault>(*rule.fallback).block];
          tb.principal = unite(tb.principal, rest);
        }
      }
      if (members.limit) singles.push_back((*this)(Point::limit(k)));
    }
  }
  return unite(out, PointSet::of(target_, singles));
}

Index PointMap::bound() const noexcept {
  Index out = 0;
  auto note = [&](const Point& p) {
    if (p.index) out = std::max(out, *p.index + 1);
  };
  for (const BlockRule& rule : rules_) {
    for (const auto& [i, p] : rule.table) {
      out = std::max(out, i + 1);
      note(p);
    }
    if (rule.fallback) {
      if (const auto* c = std::get_if<ConstantDefault>(&*rule.fallback)) note(c->target);
    }
  }
  return out;
}

PointMap compose(const PointMap& outer, const PointMap& inner) {
  if (inner.target() != outer.source()) {
    throw Error(ErrorCode::DomainMismatch, "cannot compose point maps over different shapes");
  }
  std::vector<BlockRule> rules(inner.source().size());
  for (Index k = 0; k < inner.source().size(); ++k) {
    const BlockRule& in = inner.rules()[k];
    BlockRule& out = rules[k];
    for (const auto& [i, p] : in.table) out.table.emplace(i, outer(p));
    if (!in.fallback) continue;
    if (const auto* c = std::get_if<ConstantDefault>(&*in.fallback)) {
      out.fallback = ConstantDefault{outer(c->target)};
      continue;
    }
    // Identity-like into block b: the result on the rest follows outer's rule for b.
    const Index b = std::get<IdentityDefault>(*in.fallback).block;
    const BlockRule& via = outer.rules()[b];
    for (const auto& [i, p] : via.table) {
      if (!in.table.contains(i)) out.table.emplace(i, p);
    }
    out.fallback = via.fallback;
  }
  return PointMap(inner.source(), outer.target(), std::move(rules));
}

std::optional<Point> first_disagreement(const PointMap& f, const PointMap& g, const PointSet& x) {
  const Index bound = std::max({f.bound(), g.bound(), x.bound()});
  for (const Point& p : decisive_points(f.source(), x, bound)) {
    if (f(p) != g(p)) return p;
  }
  return std::nullopt;
}

std::optional<Point> first_escape(const PointMap& f, const PointSet& x, const PointSet& y) {
  const Index bound = std::max({f.bound(), x.bound(), y.bound()});
  for (const Point& p : decisive_points(f.source(), x, bound)) {
    if (!y.contains(f(p))) return p;
  }
  return std::nullopt;
}

std::optional<std::pair<Point, Point>> first_collision(const PointMap& f, const PointSet& x) {
  const Index bound = std::max(f.bound(), x.bound());
  // Two probes past the bound expose constant defaults on infinite sets.
  std::vector<Point> probes = decisive_points(f.source(), x, bound + 1);
  const auto extra = decisive_points(f.source(), x, bound);
  probes.insert(probes.end(), extra.begin(), extra.end());
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  std::map<Point, Point> seen;
  for (const Point& p : probes) {
    auto [it, fresh] = seen.emplace(f(p), p);
    if (!fresh) return std::make_pair(it->second, p);
  }
  return std::nullopt;
}

}  // namespace stonedual
