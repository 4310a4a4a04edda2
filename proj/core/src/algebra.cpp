#include "stonedual/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

namespace {

constexpr std::uint64_t kMaxEnumerated = std::uint64_t{1} << 20;

}  // namespace

Factor Factor::finite(std::vector<std::string> atoms) {
  Factor f;
  f.kind = FactorKind::Finite;
  f.universe = Universe::finite(static_cast<Index>(atoms.size()));
  f.atoms = std::move(atoms);
  return f;
}

Factor Factor::finite_cofinite(Universe universe) {
  Factor f;
  f.kind = FactorKind::FiniteCofinite;
  f.universe = universe;
  return f;
}

Algebra::Algebra(AlgebraDescriptor descriptor) {
  if (!descriptor.product && descriptor.factors.size() != 1) {
    throw Error(ErrorCode::MalformedDescriptor, "a non-product algebra has exactly one factor");
  }
  if (descriptor.product && descriptor.factors.empty()) {
    throw Error(ErrorCode::MalformedDescriptor, "a product needs at least one factor");
  }
  Shape shape;
  for (const Factor& f : descriptor.factors) {
    if (f.kind == FactorKind::Finite) {
      std::set<std::string> seen;
      for (const std::string& label : f.atoms) {
        if (!seen.insert(label).second) {
          throw Error(ErrorCode::MalformedDescriptor, "duplicate atom label '" + label + "'");
        }
      }
      if (f.universe != Universe::finite(static_cast<Index>(f.atoms.size()))) {
        throw Error(ErrorCode::MalformedDescriptor, "finite factor universe must match its atom list");
      }
    } else if (!f.atoms.empty()) {
      throw Error(ErrorCode::MalformedDescriptor, "finite-cofinite factors carry no atom labels");
    }
    shape.push_back(f.universe);
  }
  data_ = std::make_shared<const Data>(Data{std::move(descriptor), std::move(shape)});
}

Algebra Algebra::finite(std::vector<std::string> atoms) {
  return Algebra(AlgebraDescriptor{false, {Factor::finite(std::move(atoms))}});
}

Algebra Algebra::finite_cofinite(Universe universe) {
  return Algebra(AlgebraDescriptor{false, {Factor::finite_cofinite(universe)}});
}

Algebra Algebra::product(std::vector<Factor> factors) {
  return Algebra(AlgebraDescriptor{true, std::move(factors)});
}

bool Algebra::is_finite() const noexcept {
  return std::none_of(shape().begin(), shape().end(), [](const Universe& u) { return u.is_infinite(); });
}

bool Algebra::is_degenerate() const noexcept {
  return std::all_of(shape().begin(), shape().end(),
                     [](const Universe& u) { return !u.is_infinite() && u.size() == 0; });
}

std::optional<Index> Algebra::atom_index(Index block, std::string_view label) const {
  const Factor& f = factor(block);
  if (f.kind != FactorKind::Finite) return std::nullopt;
  auto it = std::find(f.atoms.begin(), f.atoms.end(), label);
  if (it == f.atoms.end()) return std::nullopt;
  return static_cast<Index>(it - f.atoms.begin());
}

std::string Algebra::point_label(const Point& p) const {
  const Factor& f = factor(p.block);
  std::string prefix = block_count() > 1 ? "b" + std::to_string(p.block) + ":" : "";
  if (!p.index) return prefix + "free";
  if (f.kind == FactorKind::Finite) return prefix + "x_" + f.atoms.at(*p.index);
  return prefix + "P" + std::to_string(*p.index);
}

Element Algebra::bottom() const {
  return Element{std::vector<Subset>(block_count())};
}

Element Algebra::top() const {
  Element out;
  for (const Universe& u : shape()) out.parts.push_back(u.full());
  return out;
}

bool Algebra::owns(const Element& a) const noexcept {
  if (a.parts.size() != block_count()) return false;
  for (Index k = 0; k < block_count(); ++k) {
    if (!shape()[k].is_canonical(a.parts[k])) return false;
  }
  return true;
}

void Algebra::check(const Element& a) const {
  if (!owns(a)) {
    throw Error(ErrorCode::ForeignElement, "element " + describe(a) + " is not in " + describe());
  }
}

Element Algebra::meet(const Element& a, const Element& b) const {
  check(a);
  check(b);
  Element out;
  for (Index k = 0; k < block_count(); ++k) out.parts.push_back(intersect(a.parts[k], b.parts[k]));
  return out;
}

Element Algebra::join(const Element& a, const Element& b) const {
  check(a);
  check(b);
  Element out;
  for (Index k = 0; k < block_count(); ++k) out.parts.push_back(unite(a.parts[k], b.parts[k]));
  return out;
}

Element Algebra::complement(const Element& a) const {
  check(a);
  Element out;
  for (Index k = 0; k < block_count(); ++k) out.parts.push_back(shape()[k].complement(a.parts[k]));
  return out;
}

bool Algebra::leq(const Element& a, const Element& b) const {
  check(a);
  check(b);
  for (Index k = 0; k < block_count(); ++k) {
    if (!is_subset(a.parts[k], b.parts[k])) return false;
  }
  return true;
}

bool Algebra::is_zero(const Element& a) const {
  check(a);
  return std::all_of(a.parts.begin(), a.parts.end(), [](const Subset& s) { return s.is_empty(); });
}

bool Algebra::equal(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return a == b;
}

Element Algebra::atom(Index block, Index i) const {
  if (block >= block_count() || !shape()[block].in_range(i)) {
    throw Error(ErrorCode::ForeignElement, "no atom " + std::to_string(i) + " in block " + std::to_string(block));
  }
  Element out = bottom();
  out.parts[block] = Subset::single(i);
  return out;
}

Element Algebra::block_unit(Index block) const {
  Element out = bottom();
  out.parts.at(block) = shape()[block].full();
  return out;
}

Element Algebra::make(std::vector<Subset> parts) const {
  if (parts.size() != block_count()) {
    throw Error(ErrorCode::ForeignElement, "element has the wrong number of blocks");
  }
  Element out;
  for (Index k = 0; k < block_count(); ++k) {
    Subset s = parts[k].cofinite ? Subset::cofinite_except(parts[k].support) : Subset::finite(parts[k].support);
    if (!s.cofinite && !s.support.empty() && !shape()[k].in_range(s.support.back())) {
      throw Error(ErrorCode::ForeignElement,
                  "index " + std::to_string(s.support.back()) + " is outside block " + std::to_string(k));
    }
    out.parts.push_back(shape()[k].normalize(s));
  }
  return out;
}

Element Algebra::from_labels(const std::vector<std::string>& labels) const {
  if (block_count() != 1 || factor(0).kind != FactorKind::Finite) {
    throw Error(ErrorCode::ForeignElement, "atom labels only name elements of a finite algebra");
  }
  std::vector<Index> members;
  for (const std::string& label : labels) {
    auto i = atom_index(0, label);
    if (!i) throw Error(ErrorCode::ForeignElement, "unknown atom '" + label + "'");
    members.push_back(*i);
  }
  return Element{{Subset::finite(std::move(members))}};
}

std::vector<Element> Algebra::atoms(Index bound) const {
  std::vector<Element> out;
  for (Index k = 0; k < block_count(); ++k) {
    const Index n = shape()[k].is_infinite() ? bound : shape()[k].size();
    for (Index i = 0; i < n; ++i) out.push_back(atom(k, i));
  }
  return out;
}

std::uint64_t Algebra::cardinality() const {
  if (!is_finite()) {
    throw Error(ErrorCode::EnumerationUnsupported, describe() + " is infinite");
  }
  std::uint64_t atoms = 0;
  for (const Universe& u : shape()) atoms += u.size();
  if (atoms >= 63) throw Error(ErrorCode::EnumerationUnsupported, "too many atoms to count");
  return std::uint64_t{1} << atoms;
}

std::vector<Element> Algebra::elements() const {
  const std::uint64_t n = cardinality();
  if (n > kMaxEnumerated) {
    throw Error(ErrorCode::EnumerationUnsupported, describe() + " has too many elements to enumerate");
  }
  std::vector<std::pair<Index, Index>> slots;  // (block, index) per atom bit
  for (Index k = 0; k < block_count(); ++k) {
    for (Index i = 0; i < shape()[k].size(); ++i) slots.emplace_back(k, i);
  }
  std::vector<Element> out;
  out.reserve(n);
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    Element e = bottom();
    for (std::size_t bit = 0; bit < slots.size(); ++bit) {
      if (mask & (std::uint64_t{1} << bit)) e.parts[slots[bit].first].support.push_back(slots[bit].second);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string Algebra::describe() const {
  std::ostringstream out;
  auto one = [&](const Factor& f) {
    if (f.kind == FactorKind::Finite) {
      out << "Finite{";
      for (std::size_t i = 0; i < f.atoms.size(); ++i) out << (i ? "," : "") << f.atoms[i];
      out << '}';
    } else if (f.universe.is_infinite()) {
      out << "FC(N)";
    } else {
      out << "FC(" << f.universe.size() << ')';
    }
  };
  if (!descriptor().product) {
    one(factor(0));
    return out.str();
  }
  out << "Product[";
  for (Index k = 0; k < block_count(); ++k) {
    if (k) out << ", ";
    one(factor(k));
  }
  out << ']';
  return out.str();
}

std::string Algebra::describe(const Element& a) const {
  std::ostringstream out;
  if (a.parts.size() != 1) out << '(';
  for (std::size_t k = 0; k < a.parts.size(); ++k) {
    if (k) out << ", ";
    if (k < block_count() && factor(static_cast<Index>(k)).kind == FactorKind::Finite && !a.parts[k].cofinite) {
      out << '{';
      const auto& atoms = factor(static_cast<Index>(k)).atoms;
      for (std::size_t i = 0; i < a.parts[k].support.size(); ++i) {
        const Index idx = a.parts[k].support[i];
        out << (i ? "," : "") << (idx < atoms.size() ? atoms[idx] : std::to_string(idx));
      }
      out << '}';
    } else {
      out << to_string(a.parts[k]);
    }
  }
  if (a.parts.size() != 1) out << ')';
  return out.str();
}

PointSet stone_set(const Algebra& algebra, const Element& a) {
  algebra.check(a);
  PointSet out;
  for (Index k = 0; k < algebra.block_count(); ++k) {
    out.blocks.push_back({a.parts[k], algebra.shape()[k].is_infinite() && a.parts[k].cofinite});
  }
  return out;
}

// ---------------------------------------------------------------------------

Homomorphism::Homomorphism(Algebra domain, Algebra codomain, PointMap dual)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), dual_(std::move(dual)) {
  if (dual_.source() != codomain_.shape() || dual_.target() != domain_.shape()) {
    throw Error(ErrorCode::DomainMismatch, "dual map shapes do not match " + domain_.describe() + " -> " +
                                               codomain_.describe());
  }
}

Homomorphism Homomorphism::identity(const Algebra& algebra) {
  return Homomorphism(algebra, algebra, PointMap::identity(algebra.shape()));
}

Element Homomorphism::operator()(const Element& a) const {
  const PointSet pre = dual_.preimage(stone_set(domain_, a));
  Element out;
  for (const BlockSet& b : pre.blocks) out.parts.push_back(b.principal);
  return out;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  if (!(inner.codomain() == outer.domain())) {
    throw Error(ErrorCode::DomainMismatch, "cannot compose: " + inner.codomain().describe() + " vs " +
                                               outer.domain().describe());
  }
  // Duals compose contravariantly.
  return Homomorphism(inner.domain(), outer.codomain(), compose(inner.dual(), outer.dual()));
}

bool is_homomorphism(const Algebra& domain, const Algebra& codomain, const std::map<Element, Element>& table) {
  const auto elems = domain.elements();
  if (table.size() != elems.size()) return false;
  for (const Element& a : elems) {
    auto it = table.find(a);
    if (it == table.end() || !codomain.owns(it->second)) return false;
  }
  auto at = [&](const Element& a) -> const Element& { return table.at(a); };
  if (at(domain.bottom()) != codomain.bottom()) return false;
  if (at(domain.top()) != codomain.top()) return false;
  for (const Element& a : elems) {
    if (at(domain.complement(a)) != codomain.complement(at(a))) return false;
    for (const Element& b : elems) {
      if (at(domain.meet(a, b)) != codomain.meet(at(a), at(b))) return false;
      if (at(domain.join(a, b)) != codomain.join(at(a), at(b))) return false;
    }
  }
  return true;
}

Homomorphism Homomorphism::from_table(const Algebra& domain, const Algebra& codomain,
                                      const std::map<Element, Element>& table) {
  if (!domain.is_finite() || !codomain.is_finite()) {
    throw Error(ErrorCode::FiniteBackendOnly, "value tables need finite algebras");
  }
  if (!is_homomorphism(domain, codomain, table)) {
    throw Error(ErrorCode::MalformedMorphism, "value table is not a Boolean homomorphism");
  }
  // The character at codomain atom y pulls back to the unique domain atom
  // whose image contains y.
  std::vector<BlockRule> rules(codomain.block_count());
  for (Index j = 0; j < codomain.block_count(); ++j) {
    for (Index y = 0; y < codomain.shape()[j].size(); ++y) {
      for (Index k = 0; k < domain.block_count() && !rules[j].table.contains(y); ++k) {
        for (Index t = 0; t < domain.shape()[k].size(); ++t) {
          if (table.at(domain.atom(k, t)).parts[j].contains(y)) {
            rules[j].table.emplace(y, Point::at(k, t));
            break;
          }
        }
      }
    }
  }
  return Homomorphism(domain, codomain, PointMap(codomain.shape(), domain.shape(), std::move(rules)));
}

std::vector<Homomorphism> all_homomorphisms(const Algebra& domain, const Algebra& codomain) {
  if (!domain.is_finite() || !codomain.is_finite()) {
    throw Error(ErrorCode::EnumerationUnsupported, "homomorphisms are enumerated between finite algebras only");
  }
  std::vector<Point> targets;
  for (Index k = 0; k < domain.block_count(); ++k) {
    for (Index i = 0; i < domain.shape()[k].size(); ++i) targets.push_back(Point::at(k, i));
  }
  std::vector<Point> sources;
  for (Index j = 0; j < codomain.block_count(); ++j) {
    for (Index y = 0; y < codomain.shape()[j].size(); ++y) sources.push_back(Point::at(j, y));
  }
  std::vector<Homomorphism> out;
  if (targets.empty() && !sources.empty()) return out;
  std::vector<std::size_t> choice(sources.size(), 0);
  while (true) {
    std::vector<BlockRule> rules(codomain.block_count());
    for (std::size_t s = 0; s < sources.size(); ++s) {
      rules[sources[s].block].table.emplace(*sources[s].index, targets[choice[s]]);
    }
    out.emplace_back(domain, codomain, PointMap(codomain.shape(), domain.shape(), std::move(rules)));
    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == targets.size()) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return out;
}

}  // namespace stonedual
