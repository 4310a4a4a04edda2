#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stonedual/points.hpp"
#include "stonedual/subset.hpp"

namespace stonedual {

enum class FactorKind { Finite, FiniteCofinite };

/// One factor of a representable Boolean algebra: the powerset of a finite
/// list of labelled atoms, or the finite-cofinite algebra over a countable
/// index set.
struct Factor {
  FactorKind kind = FactorKind::Finite;
  std::vector<std::string> atoms;              // Finite only
  Universe universe = Universe::finite(0);     // atoms.size() for Finite

  static Factor finite(std::vector<std::string> atoms);
  static Factor finite_cofinite(Universe universe = Universe::naturals());

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct AlgebraDescriptor {
  bool product = false;          // false: exactly one factor
  std::vector<Factor> factors;

  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

/// An element: one finite-or-cofinite subset per block.  Finite blocks hold
/// atom indices (labels are resolved through the algebra).
struct Element {
  std::vector<Subset> parts;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// A validated representable Boolean algebra.  Cheap to copy; immutable.
class Algebra {
 public:
  /// Validates the descriptor; throws MalformedDescriptor.
  explicit Algebra(AlgebraDescriptor descriptor);

  static Algebra finite(std::vector<std::string> atoms);
  static Algebra finite_cofinite(Universe universe = Universe::naturals());
  static Algebra product(std::vector<Factor> factors);

  const AlgebraDescriptor& descriptor() const noexcept { return data_->descriptor; }
  const Shape& shape() const noexcept { return data_->shape; }
  Index block_count() const noexcept { return static_cast<Index>(data_->shape.size()); }
  const Factor& factor(Index block) const { return data_->descriptor.factors.at(block); }

  /// True when every block has a finite universe.
  bool is_finite() const noexcept;
  /// 0 = 1: no block has any atom.
  bool is_degenerate() const noexcept;

  std::optional<Index> atom_index(Index block, std::string_view label) const;
  std::string point_label(const Point& p) const;

  // Element operations.  Inputs must belong to this algebra (ForeignElement).
  Element bottom() const;
  Element top() const;
  Element meet(const Element& a, const Element& b) const;
  Element join(const Element& a, const Element& b) const;
  Element complement(const Element& a) const;
  bool leq(const Element& a, const Element& b) const;
  bool is_zero(const Element& a) const;
  bool equal(const Element& a, const Element& b) const;

  /// The atom at index i of `block` (a singleton).
  Element atom(Index block, Index i) const;
  /// The unit of one block, zero elsewhere.
  Element block_unit(Index block) const;
  /// Builds an element from per-block subsets, normalizing each one.
  Element make(std::vector<Subset> parts) const;
  Element from_labels(const std::vector<std::string>& labels) const;

  bool owns(const Element& a) const noexcept;
  void check(const Element& a) const;

  /// Atoms in block order; infinite blocks contribute their first `bound`
  /// singletons.
  std::vector<Element> atoms(Index bound) const;

  /// Every element; finite algebras only (EnumerationUnsupported otherwise
  /// or beyond 2^20 elements).
  std::vector<Element> elements() const;
  std::uint64_t cardinality() const;

  std::string describe() const;
  std::string describe(const Element& a) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.data_ == b.data_ || a.data_->descriptor == b.data_->descriptor;
  }

 private:
  struct Data {
    AlgebraDescriptor descriptor;
    Shape shape;
  };
  std::shared_ptr<const Data> data_;
};

/// The Stone map s_A: the set of characters that send `a` to 1.
PointSet stone_set(const Algebra& algebra, const Element& a);

/// A Boolean homomorphism domain -> codomain, stored by its dual point map
/// S(codomain) -> S(domain) (y |-> y o phi).
class Homomorphism {
 public:
  /// Throws DomainMismatch when the dual's shapes do not match.
  Homomorphism(Algebra domain, Algebra codomain, PointMap dual);

  static Homomorphism identity(const Algebra& algebra);
  /// From a complete value table on a finite domain.  Throws
  /// MalformedMorphism when the table is not a homomorphism.
  static Homomorphism from_table(const Algebra& domain, const Algebra& codomain,
                                 const std::map<Element, Element>& table);

  const Algebra& domain() const noexcept { return domain_; }
  const Algebra& codomain() const noexcept { return codomain_; }
  const PointMap& dual() const noexcept { return dual_; }

  /// phi(a) = { y : dual(y) in s(a) }.
  Element operator()(const Element& a) const;

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

 private:
  Algebra domain_;
  Algebra codomain_;
  PointMap dual_;
};

/// outer after inner; throws DomainMismatch.
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);

/// Exhaustive check that a full value table between finite algebras
/// preserves meet, join, complement, 0 and 1.
bool is_homomorphism(const Algebra& domain, const Algebra& codomain,
                     const std::map<Element, Element>& table);

/// Every homomorphism between two finite algebras, one per function from the
/// codomain's atoms to the domain's atoms.
std::vector<Homomorphism> all_homomorphisms(const Algebra& domain, const Algebra& codomain);

}  // namespace stonedual
