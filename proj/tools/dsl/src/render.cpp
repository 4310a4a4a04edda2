#include <algorithm>

#include "json_io.hpp"

namespace stonedual::dsl {

using nlohmann::json;

namespace {

json factor_json(const Factor& f) {
  if (f.kind == FactorKind::Finite) return {{"kind", "finite"}, {"atoms", f.atoms}};
  if (f.universe.is_infinite()) return {{"kind", "fc"}, {"universe", "nat"}};
  return {{"kind", "fc"}, {"universe", f.universe.size()}};
}

json subset_json(const Algebra& algebra, Index block, const Subset& s) {
  const Factor& f = algebra.factor(block);
  if (f.kind == FactorKind::Finite) {
    json atoms = json::array();
    for (Index i : s.support) atoms.push_back(f.atoms.at(i));
    return {{"atoms", atoms}};
  }
  return {{"mode", s.cofinite ? "cofinite" : "finite"}, {"support", s.support}};
}

json rules_json(const PointMap& map, const Algebra* source_labels, const Algebra* target_labels) {
  json rules = json::array();
  for (Index k = 0; k < map.rules().size(); ++k) {
    const BlockRule& rule = map.rules()[k];
    json r = json::object();
    json table = json::array();
    for (const auto& [i, p] : rule.table) {
      json from = i;
      if (source_labels && source_labels->factor(k).kind == FactorKind::Finite) from = source_labels->factor(k).atoms.at(i);
      table.push_back({{"from", from}, {"to", to_json(target_labels, p)}});
    }
    r["table"] = table;
    if (rule.fallback) {
      if (const auto* c = std::get_if<ConstantDefault>(&*rule.fallback)) {
        r["default"] = {{"kind", "constant"}, {"to", to_json(target_labels, c->target)}};
      } else {
        r["default"] = {{"kind", "identity"}, {"block", std::get<IdentityDefault>(*rule.fallback).block}};
      }
    }
    rules.push_back(r);
  }
  return rules;
}

json block_ideal_json(const Algebra& algebra, Index block, const BlockIdeal& b) {
  switch (b.kind) {
    case BlockIdeal::Kind::Full: return {{"kind", "full"}};
    case BlockIdeal::Kind::FiniteSupport: return {{"kind", "finite-support"}};
    case BlockIdeal::Kind::Principal:
      return {{"kind", "principal"}, {"gen", subset_json(algebra, block, b.generator)}};
  }
  return nullptr;
}

}  // namespace

json to_json(const PointMap& map, const Algebra* source_labels, const Algebra* target_labels) {
  return rules_json(map, source_labels, target_labels);
}

json to_json(const Algebra& algebra) {
  const AlgebraDescriptor& d = algebra.descriptor();
  if (!d.product) return factor_json(d.factors.front());
  json factors = json::array();
  for (const Factor& f : d.factors) factors.push_back(factor_json(f));
  return {{"kind", "product"}, {"factors", factors}};
}

json to_json(const Algebra& algebra, const Element& a) {
  if (!algebra.descriptor().product) return subset_json(algebra, 0, a.parts.front());
  json tuple = json::array();
  for (Index k = 0; k < a.parts.size(); ++k) tuple.push_back(subset_json(algebra, k, a.parts[k]));
  return {{"tuple", tuple}};
}

json to_json(const Algebra* algebra, const Point& p) {
  if (!p.index) return {{"block", p.block}, {"kind", "free"}};
  if (algebra && algebra->factor(p.block).kind == FactorKind::Finite) {
    return {{"block", p.block}, {"kind", "atom"}, {"id", algebra->factor(p.block).atoms.at(*p.index)}};
  }
  return {{"block", p.block}, {"kind", "principal"}, {"id", *p.index}};
}

json to_json(const PointSet& x) {
  json blocks = json::array();
  for (const BlockSet& b : x.blocks) {
    blocks.push_back({{"mode", b.principal.cofinite ? "cofinite" : "finite"},
                      {"set", b.principal.support},
                      {"free", b.limit}});
  }
  return {{"blocks", blocks}};
}

json to_json(const Ideal& ideal) {
  const Algebra& a = ideal.owner();
  const auto& blocks = ideal.blocks();
  const auto count = [&](BlockIdeal::Kind k) {
    return std::count_if(blocks.begin(), blocks.end(), [&](const BlockIdeal& b) { return b.kind == k; });
  };
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
  if (count(BlockIdeal::Kind::Full) == n) return {{"kind", "full"}};
  if (count(BlockIdeal::Kind::FiniteSupport) == 1 && count(BlockIdeal::Kind::Full) == n - 1) {
    for (Index k = 0; k < blocks.size(); ++k) {
      if (blocks[k].kind == BlockIdeal::Kind::FiniteSupport) return {{"kind", "finite-support"}, {"block", k}};
    }
  }
  if (auto g = ideal.generator()) return {{"kind", "principal"}, {"gen", to_json(a, *g)}};
  json parts = json::array();
  for (Index k = 0; k < blocks.size(); ++k) parts.push_back(block_ideal_json(a, k, blocks[k]));
  return {{"kind", "tuple"}, {"blocks", parts}};
}

json to_json(const SpacePresentation& space) {
  json blocks = json::array();
  for (const SpaceBlock& b : space.blocks) {
    switch (b.kind) {
      case SpaceBlockKind::FiniteDiscrete: blocks.push_back({{"kind", "finite"}, {"n", b.points}}); break;
      case SpaceBlockKind::OnePointCompactification: blocks.push_back({{"kind", "k-omega"}}); break;
      case SpaceBlockKind::DiscreteCountable: blocks.push_back({{"kind", "discrete-omega"}}); break;
    }
  }
  return {{"kind", "space"}, {"blocks", blocks}};
}

json to_json(const Object& object) {
  struct Visitor {
    json operator()(const Algebra& a) const { return to_json(a); }
    json operator()(const PairObject& p) const { return {{"algebra", to_json(p.algebra)}, {"points", to_json(p.points)}}; }
    json operator()(const Ideal& i) const { return {{"algebra", to_json(i.owner())}, {"ideal", to_json(i)}}; }
    json operator()(const SpacePresentation& s) const { return to_json(s); }
    json operator()(const Homomorphism& h) const {
      return {{"kind", "homomorphism"},
              {"domain", to_json(h.domain())},
              {"codomain", to_json(h.codomain())},
              {"dual", rules_json(h.dual(), &h.codomain(), &h.domain())}};
    }
    json operator()(const SpaceMap& f) const {
      return {{"kind", "space-map"},
              {"source", to_json(f.source())},
              {"target", to_json(f.target())},
              {"rule", rules_json(f.rule(), nullptr, nullptr)}};
    }
    json operator()(const FiniteSet& s) const { return {{"kind", "set"}, {"size", s.size}}; }
    json operator()(const FiniteFunction& f) const { return {{"kind", "function"}, {"map", f.map}, {"target", f.target}}; }
  };
  return std::visit(Visitor{}, object);
}

std::string render(const Object& object) { return to_json(object).dump(); }

}  // namespace stonedual::dsl
