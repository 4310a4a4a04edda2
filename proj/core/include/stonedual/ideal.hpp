#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/points.hpp"
#include "stonedual/space.hpp"
#include "stonedual/stone_space.hpp"

namespace stonedual {

/// Ideal of one block.  Principal blocks whose generator is the block unit
/// are stored as Full, and a finite-support block over a finite universe is
/// Full as well, so equal ideals have equal representations.
struct BlockIdeal {
  enum class Kind { Principal, Full, FiniteSupport };
  Kind kind = Kind::Full;
  Subset generator;  // Principal only

  friend auto operator<=>(const BlockIdeal&, const BlockIdeal&) = default;
};

/// A representable ideal: one block ideal per block (every ideal of a finite
/// product is a product of ideals of the factors).
class Ideal {
 public:
  static Ideal principal(const Algebra& algebra, const Element& generator);
  static Ideal full(const Algebra& algebra);
  /// The finite-support ideal of `block`, an infinite finite-cofinite block;
  /// every other block is Full.  Throws FiniteSupportOnNonFcBlock.
  static Ideal finite_support(const Algebra& algebra, Index block);
  /// The ideal generated by finitely many elements: principal on their join.
  static Ideal generated_by(const Algebra& algebra, std::span<const Element> generators);
  static Ideal from_blocks(const Algebra& algebra, std::vector<BlockIdeal> blocks);

  const Algebra& owner() const noexcept { return owner_; }
  const std::vector<BlockIdeal>& blocks() const noexcept { return blocks_; }

  bool contains(const Element& a) const;
  /// Largest element when the ideal is principal.
  std::optional<Element> generator() const;
  std::string describe() const;

  friend bool operator==(const Ideal&, const Ideal&) = default;

 private:
  Ideal(Algebra owner, std::vector<BlockIdeal> blocks);
  Algebra owner_;
  std::vector<BlockIdeal> blocks_;
};

Ideal meet(const Ideal& a, const Ideal& b);
Ideal join(const Ideal& a, const Ideal& b);

/// Density: every nonzero a dominates a nonzero member.  On failure the
/// witness is a nonzero element that meets the ideal only in 0.
struct DensityVerdict {
  bool dense = true;
  std::optional<Element> witness;
};
DensityVerdict is_dense_ideal(const Ideal& ideal);

/// The pseudocomplement {a : a meets every member in 0}.
Ideal pseudocomplement(const Ideal& ideal);

/// J is simple when J joined with its pseudocomplement is the whole algebra.
bool is_simple(const Ideal& ideal);
/// Every simple ideal of a finite algebra (EnumerationUnsupported otherwise).
std::vector<Ideal> simple_ideals(const Algebra& algebra);

/// L_I^A: the characters that send some member of I to 1.
PointSet l_set(const Ideal& ideal);

/// Stone's ideal-to-open-set map: the union of s_A(a) over members a.
PointSet iota(const Ideal& ideal);
/// The inverse on open sets: {a : s_A(a) contained in U}.  Throws NotOpen or
/// UnrepresentableIdeal.
Ideal iota_inverse(const Algebra& algebra, const PointSet& open);

/// KO(X) inside CO(X): the compact clopens.  Throws UnrepresentableCO.
Ideal ko_ideal(const SpacePresentation& space);

// ---------------------------------------------------------------------------
// Local Boolean algebras.

/// A simple ideal of a finite-support block ideal with no join in the
/// algebra: the finite sets of indices drawn from an infinite, coinfinite
/// residue class.  The refuter shows no upper bound is least.
struct UnboundedSimpleIdeal {
  Algebra algebra;
  Index block = 0;
  ResidueClass indices;

  bool contains(const Element& a) const;
  bool is_upper_bound(const Element& u) const;
  /// A strictly smaller upper bound than `u`: drop the smallest index of u
  /// outside the residue class.  nullopt when u is not an upper bound.
  std::optional<Element> refute(const Element& u) const;
  std::string describe() const;
};

struct ZlbaVerdict {
  bool is_lba = false;
  bool is_zlba = false;
  std::optional<Element> density_witness;         // set when not LBA
  std::optional<SymbolicClopen> clopen_witness;   // clopen of L_I^A that is not a trace
  std::optional<UnboundedSimpleIdeal> join_witness;
  std::string reason;
};

/// Decides ZLBA through the clopen-trace criterion on L_I^A.
ZlbaVerdict decide_zlba(const Ideal& ideal, ResidueClass pattern = ResidueClass{});

/// Decides ZLBA by inspecting the simple ideals of I directly: enumerated on
/// finite blocks, structurally on principal infinite blocks, and on
/// finite-support blocks by building the unbounded simple ideal and
/// validating its refuter against sampled upper bounds.
ZlbaVerdict decide_zlba_by_joins(const Ideal& ideal, ResidueClass pattern = ResidueClass{});

/// Candidate upper bounds for an unbounded simple ideal, used to exercise the
/// refuter (`count` of them, all genuine upper bounds).
std::vector<Element> candidate_upper_bounds(const UnboundedSimpleIdeal& witness, std::size_t count);

/// A validated pair (A, I) with I an ideal of A; the verdict is computed on
/// construction.
class LbaPair {
 public:
  explicit LbaPair(Ideal ideal, ResidueClass pattern = ResidueClass{});

  const Algebra& algebra() const noexcept { return ideal_.owner(); }
  const Ideal& ideal() const noexcept { return ideal_; }
  const ZlbaVerdict& verdict() const noexcept { return verdict_; }
  bool is_lba() const noexcept { return verdict_.is_lba; }
  bool is_zlba() const noexcept { return verdict_.is_zlba; }

  friend bool operator==(const LbaPair& a, const LbaPair& b) { return a.ideal_ == b.ideal_; }

 private:
  Ideal ideal_;
  ZlbaVerdict verdict_;
};

/// The morphism condition between LBAs: every b in J lies below phi(a) for
/// some a in I.  Decided as: phi's dual maps L_J into L_I (a compact s(b)
/// covered by the open L_I is covered by a single s(a)).  On failure the
/// witness is a member b of J with no such a.
struct LbaConditionVerdict {
  bool holds = true;
  std::optional<Element> witness;
};
LbaConditionVerdict lba_condition(const Homomorphism& phi, const Ideal& source, const Ideal& target);

class LbaMorphism {
 public:
  /// Throws LbaConditionFailed.
  LbaMorphism(LbaPair source, LbaPair target, Homomorphism map);

  static LbaMorphism identity(const LbaPair& pair);

  const LbaPair& source() const noexcept { return source_; }
  const LbaPair& target() const noexcept { return target_; }
  const Homomorphism& map() const noexcept { return map_; }

  friend bool operator==(const LbaMorphism&, const LbaMorphism&) = default;

 private:
  LbaPair source_;
  LbaPair target_;
  Homomorphism map_;
};

LbaMorphism compose(const LbaMorphism& outer, const LbaMorphism& inner);

}  // namespace stonedual
