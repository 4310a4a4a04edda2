#include <algorithm>

#include "json.hpp"
#include "stonedual/dsl.hpp"
#include "stonedual/error.hpp"
#include "json_io.hpp"

namespace stonedual::dsl {

using nlohmann::json;

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::string invariant, const std::string& message)
    : std::runtime_error(invariant + ": " + message), invariant_(std::move(invariant)) {}

namespace {

[[noreturn]] void schema(const std::string& message) { throw ValidationError("schema", message); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Index number(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema(std::string(what) + " must be a non-negative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v > 0xffffffffu) schema(std::string(what) + " is too large");
  return static_cast<Index>(v);
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  return j;
}

// Runs a constructor, reporting library errors as validation errors.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string code(to_string(e.code()));
    std::string message = e.what();
    if (message.starts_with(code + ": ")) message.erase(0, code.size() + 2);
    throw ValidationError(code, message);
  }
}

Factor parse_factor(const json& j) {
  const std::string kind = text(field(j, "kind"), "kind");
  if (kind == "finite") {
    std::vector<std::string> atoms;
    for (const json& a : array(field(j, "atoms"), "atoms")) atoms.push_back(text(a, "atom label"));
    return Factor::finite(std::move(atoms));
  }
  if (kind == "fc") {
    const json& u = field(j, "universe");
    if (u.is_string()) {
      if (u.get<std::string>() != "nat") schema("universe must be \"nat\" or a size");
      return Factor::finite_cofinite(Universe::naturals());
    }
    return Factor::finite_cofinite(Universe::finite(number(u, "universe")));
  }
  if (kind == "product") throw ValidationError("MalformedDescriptor", "products must be flat");
  schema("unknown algebra kind \"" + kind + "\"");
}

// An index into one block: a number, or an atom label of a finite factor.
Index parse_index(const Algebra* algebra, Index block, const json& j) {
  if (j.is_string()) {
    if (algebra == nullptr) schema("labels need an algebra");
    auto i = algebra->atom_index(block, j.get<std::string>());
    if (!i) throw ValidationError("ForeignElement", "no atom \"" + j.get<std::string>() + "\" in block " +
                                                        std::to_string(block));
    return *i;
  }
  return number(j, "index");
}

Subset parse_subset(const Algebra& algebra, Index block, const json& j) {
  std::vector<Index> members;
  if (j.contains("atoms")) {
    for (const json& a : array(j.at("atoms"), "atoms")) members.push_back(parse_index(&algebra, block, a));
    return Subset::finite(std::move(members));
  }
  const std::string mode = text(field(j, "mode"), "mode");
  for (const json& a : array(field(j, "support"), "support")) members.push_back(parse_index(&algebra, block, a));
  if (mode == "finite") return Subset::finite(std::move(members));
  if (mode == "cofinite") return Subset::cofinite_except(std::move(members));
  schema("mode must be \"finite\" or \"cofinite\"");
}

Element parse_element(const Algebra& algebra, const json& j) {
  std::vector<Subset> parts;
  if (j.contains("tuple")) {
    const json& items = array(j.at("tuple"), "tuple");
    if (items.size() != algebra.block_count()) {
      throw ValidationError("ForeignElement", "tuple needs one entry per block");
    }
    for (Index k = 0; k < items.size(); ++k) parts.push_back(parse_subset(algebra, k, items[k]));
  } else {
    if (algebra.block_count() != 1) throw ValidationError("ForeignElement", "product elements need a \"tuple\"");
    parts.push_back(parse_subset(algebra, 0, j));
  }
  for (Index k = 0; k < parts.size(); ++k) {
    for (Index i : parts[k].support) {
      if (!algebra.shape()[k].in_range(i)) {
        throw ValidationError("ForeignElement", "index " + std::to_string(i) + " is outside block " + std::to_string(k));
      }
    }
  }
  return guarded([&] { return algebra.make(std::move(parts)); });
}

Point parse_point(const Shape& shape, const Algebra* algebra, const json& j) {
  const Index block = j.contains("block") ? number(j.at("block"), "block") : 0;
  const std::string kind = text(field(j, "kind"), "point kind");
  Point p;
  if (kind == "free") {
    p = Point::limit(block);
  } else if (kind == "atom" || kind == "principal") {
    p = Point::at(block, parse_index(algebra, block, field(j, "id")));
  } else {
    schema("point kind must be atom, principal or free");
  }
  if (!shape_contains(shape, p)) throw ValidationError("ForeignElement", to_string(p) + " is not a point here");
  return p;
}

PointSet parse_point_set(const Algebra& algebra, const json& j) {
  const json& blocks = array(field(j, "blocks"), "blocks");
  const Shape& shape = algebra.shape();
  if (blocks.size() != shape.size()) throw ValidationError("ForeignElement", "point set needs one entry per block");
  PointSet x = PointSet::empty(shape);
  for (Index k = 0; k < shape.size(); ++k) {
    const json& b = blocks[k];
    std::vector<Index> members;
    for (const json& i : array(field(b, "set"), "set")) members.push_back(parse_index(&algebra, k, i));
    const std::string mode = b.contains("mode") ? text(b.at("mode"), "mode") : "finite";
    Subset s;
    if (mode == "finite") {
      s = Subset::finite(std::move(members));
    } else if (mode == "cofinite") {
      s = Subset::cofinite_except(std::move(members));
    } else {
      schema("mode must be \"finite\" or \"cofinite\"");
    }
    for (Index i : s.support) {
      if (!shape[k].in_range(i)) throw ValidationError("ForeignElement", "index " + std::to_string(i) + " out of range");
    }
    x.blocks[k].principal = shape[k].normalize(s);
    x.blocks[k].limit = b.contains("free") && b.at("free").get<bool>();
    if (x.blocks[k].limit && !shape[k].is_infinite()) {
      throw ValidationError("ForeignElement", "block " + std::to_string(k) + " has no free character");
    }
  }
  guarded([&] {
    check_point_set(shape, x);
    return 0;
  });
  return x;
}

BlockIdeal parse_block_ideal(const Algebra& algebra, Index block, const json& j) {
  const std::string kind = text(field(j, "kind"), "ideal kind");
  if (kind == "full") return {BlockIdeal::Kind::Full, {}};
  if (kind == "finite-support") return {BlockIdeal::Kind::FiniteSupport, {}};
  if (kind == "principal") return {BlockIdeal::Kind::Principal, parse_subset(algebra, block, field(j, j.contains("gen") ? "gen" : "generator"))};
  schema("unknown ideal kind \"" + kind + "\"");
}

Ideal parse_ideal(const Algebra& algebra, const json& j) {
  const std::string kind = text(field(j, "kind"), "ideal kind");
  return guarded([&] {
    if (kind == "full") return Ideal::full(algebra);
    if (kind == "principal") return Ideal::principal(algebra, parse_element(algebra, field(j, j.contains("gen") ? "gen" : "generator")));
    if (kind == "finite-support") {
      const Index block = j.contains("block") ? number(j.at("block"), "block") : 0;
      return Ideal::finite_support(algebra, block);
    }
    if (kind == "tuple") {
      const json& blocks = array(field(j, "blocks"), "blocks");
      if (blocks.size() != algebra.block_count()) throw ValidationError("ForeignElement", "one ideal per block");
      std::vector<BlockIdeal> parts;
      for (Index k = 0; k < blocks.size(); ++k) parts.push_back(parse_block_ideal(algebra, k, blocks[k]));
      return Ideal::from_blocks(algebra, std::move(parts));
    }
    schema("unknown ideal kind \"" + kind + "\"");
  });
}

SpacePresentation parse_space(const json& j) {
  SpacePresentation space;
  for (const json& b : array(field(j, "blocks"), "blocks")) {
    const std::string kind = text(field(b, "kind"), "space block kind");
    if (kind == "finite") {
      space.blocks.push_back(SpaceBlock::finite(number(field(b, "n"), "n")));
    } else if (kind == "k-omega") {
      space.blocks.push_back(SpaceBlock::one_point_compactification());
    } else if (kind == "discrete-omega") {
      space.blocks.push_back(SpaceBlock::discrete_countable());
    } else {
      schema("unknown space block kind \"" + kind + "\"");
    }
  }
  return space;
}

// Rules of a point map, one per source block.
PointMap parse_rules(const Shape& source, const Algebra* source_labels, const Shape& target,
                     const Algebra* target_labels, const json& j) {
  const json& items = array(j, "rules");
  if (items.size() != source.size()) throw ValidationError("MalformedMorphism", "one rule per source block");
  std::vector<BlockRule> rules(source.size());
  for (Index k = 0; k < source.size(); ++k) {
    const json& r = items[k];
    if (r.contains("table")) {
      for (const json& e : array(r.at("table"), "table")) {
        const Index from = parse_index(source_labels, k, field(e, "from"));
        rules[k].table.emplace(from, parse_point(target, target_labels, field(e, "to")));
      }
    }
    if (r.contains("default")) {
      const json& d = r.at("default");
      const std::string kind = text(field(d, "kind"), "default kind");
      if (kind == "identity") {
        rules[k].fallback = IdentityDefault{number(field(d, "block"), "block")};
      } else if (kind == "constant") {
        rules[k].fallback = ConstantDefault{parse_point(target, target_labels, field(d, "to"))};
      } else {
        schema("default kind must be identity or constant");
      }
    }
  }
  return guarded([&] { return PointMap(source, target, std::move(rules)); });
}

std::pair<std::size_t, std::size_t> position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Algebra parse_algebra(const json& j) {
  const std::string kind = text(field(j, "kind"), "kind");
  return guarded([&] {
    if (kind == "product") {
      std::vector<Factor> factors;
      for (const json& f : array(field(j, "factors"), "factors")) factors.push_back(parse_factor(f));
      return Algebra::product(std::move(factors));
    }
    return Algebra(AlgebraDescriptor{false, {parse_factor(j)}});
  });
}

Object parse_json(const json& j) {
  if (!j.is_object()) schema("expected a JSON object");
  if (j.contains("algebra") && j.contains("points")) {
    Algebra a = parse_algebra(j.at("algebra"));
    PointSet x = parse_point_set(a, j.at("points"));
    return PairObject{std::move(a), std::move(x)};
  }
  if (j.contains("algebra") && j.contains("ideal")) {
    const Algebra a = parse_algebra(j.at("algebra"));
    return parse_ideal(a, j.at("ideal"));
  }
  const std::string kind = j.contains("kind") ? text(j.at("kind"), "kind") : "space";
  if (kind == "finite" || kind == "fc" || kind == "product") return parse_algebra(j);
  if (kind == "space") return parse_space(j);
  if (kind == "homomorphism") {
    const Algebra domain = parse_algebra(field(j, "domain"));
    const Algebra codomain = parse_algebra(field(j, "codomain"));
    PointMap dual = parse_rules(codomain.shape(), &codomain, domain.shape(), &domain, field(j, "dual"));
    return guarded([&] { return Homomorphism(domain, codomain, std::move(dual)); });
  }
  if (kind == "space-map") {
    const SpacePresentation source = parse_space(field(j, "source"));
    const SpacePresentation target = parse_space(field(j, "target"));
    return guarded([&] {
      PointMap rule = parse_rules(source.shape(), nullptr, target.shape(), nullptr, field(j, "rule"));
      return SpaceMap(source, target, std::move(rule));
    });
  }
  if (kind == "set") return FiniteSet{number(field(j, "size"), "size")};
  if (kind == "function") {
    FiniteFunction f;
    f.target = number(field(j, "target"), "target");
    for (const json& v : array(field(j, "map"), "map")) {
      f.map.push_back(number(v, "image"));
      if (f.map.back() >= f.target) throw ValidationError("MalformedMorphism", "image outside the target set");
    }
    return f;
  }
  schema("unknown object kind \"" + kind + "\"");
}

Object parse_object(const std::string& input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::parse_error& e) {
    const auto [line, column] = position(input, e.byte);
    std::string message = e.what();
    const auto at = message.find(": ", message.find("column"));
    if (at != std::string::npos) message.erase(0, at + 2);
    throw ParseError(line, column, message);
  }
  try {
    return parse_json(j);
  } catch (const json::exception& e) {
    throw ValidationError("schema", e.what());
  }
}

std::string_view kind_name(const Object& object) {
  struct Names {
    std::string_view operator()(const Algebra&) const { return "algebra"; }
    std::string_view operator()(const PairObject&) const { return "pair"; }
    std::string_view operator()(const Ideal&) const { return "ideal"; }
    std::string_view operator()(const SpacePresentation&) const { return "space"; }
    std::string_view operator()(const Homomorphism&) const { return "homomorphism"; }
    std::string_view operator()(const SpaceMap&) const { return "space-map"; }
    std::string_view operator()(const FiniteSet&) const { return "set"; }
    std::string_view operator()(const FiniteFunction&) const { return "function"; }
  };
  return std::visit(Names{}, object);
}

}  // namespace stonedual::dsl
