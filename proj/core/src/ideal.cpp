#include "stonedual/ideal.hpp"

#include <algorithm>
#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

namespace {

using Kind = BlockIdeal::Kind;

// Finite blocks up to this many atoms get their simple ideals enumerated.
constexpr Index kEnumeratedBlockAtoms = 10;

BlockIdeal canonical_block(const Universe& u, BlockIdeal b) {
  switch (b.kind) {
    case Kind::Principal:
      b.generator = u.normalize(b.generator);
      if (b.generator == u.full()) return {Kind::Full, {}};
      return b;
    case Kind::Full: return {Kind::Full, {}};
    case Kind::FiniteSupport:
      if (!u.is_infinite()) return {Kind::Full, {}};
      return {Kind::FiniteSupport, {}};
  }
  return b;
}

bool block_contains(const Universe& u, const BlockIdeal& b, const Subset& a) {
  switch (b.kind) {
    case Kind::Principal: return is_subset(a, b.generator);
    case Kind::Full: return true;
    case Kind::FiniteSupport: return !u.is_infinite() || !a.cofinite;
  }
  return false;
}

// Largest element of a block ideal that has one.
std::optional<Subset> block_top(const Universe& u, const BlockIdeal& b) {
  switch (b.kind) {
    case Kind::Principal: return b.generator;
    case Kind::Full: return u.full();
    case Kind::FiniteSupport: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

Ideal::Ideal(Algebra owner, std::vector<BlockIdeal> blocks) : owner_(std::move(owner)), blocks_(std::move(blocks)) {
  if (blocks_.size() != owner_.block_count()) {
    throw Error(ErrorCode::ForeignElement, "ideal has the wrong number of blocks for " + owner_.describe());
  }
  for (Index k = 0; k < owner_.block_count(); ++k) {
    if (blocks_[k].kind == Kind::FiniteSupport && owner_.factor(k).kind != FactorKind::FiniteCofinite) {
      throw Error(ErrorCode::FiniteSupportOnNonFcBlock,
                  "block " + std::to_string(k) + " of " + owner_.describe() + " is not finite-cofinite");
    }
    if (blocks_[k].kind == Kind::Principal) {
      Element probe = owner_.bottom();
      probe.parts[k] = blocks_[k].generator;
      owner_.check(probe);
    }
    blocks_[k] = canonical_block(owner_.shape()[k], blocks_[k]);
  }
}

Ideal Ideal::principal(const Algebra& algebra, const Element& generator) {
  algebra.check(generator);
  std::vector<BlockIdeal> blocks;
  for (const Subset& part : generator.parts) blocks.push_back({Kind::Principal, part});
  return Ideal(algebra, std::move(blocks));
}

Ideal Ideal::full(const Algebra& algebra) {
  return Ideal(algebra, std::vector<BlockIdeal>(algebra.block_count(), BlockIdeal{Kind::Full, {}}));
}

Ideal Ideal::finite_support(const Algebra& algebra, Index block) {
  if (block >= algebra.block_count()) {
    throw Error(ErrorCode::FiniteSupportOnNonFcBlock, "no block " + std::to_string(block));
  }
  std::vector<BlockIdeal> blocks(algebra.block_count(), BlockIdeal{Kind::Full, {}});
  blocks[block] = {Kind::FiniteSupport, {}};
  return Ideal(algebra, std::move(blocks));
}

Ideal Ideal::generated_by(const Algebra& algebra, std::span<const Element> generators) {
  Element top = algebra.bottom();
  for (const Element& g : generators) top = algebra.join(top, g);
  return principal(algebra, top);
}

Ideal Ideal::from_blocks(const Algebra& algebra, std::vector<BlockIdeal> blocks) {
  return Ideal(algebra, std::move(blocks));
}

bool Ideal::contains(const Element& a) const {
  owner_.check(a);
  for (Index k = 0; k < owner_.block_count(); ++k) {
    if (!block_contains(owner_.shape()[k], blocks_[k], a.parts[k])) return false;
  }
  return true;
}

std::optional<Element> Ideal::generator() const {
  Element out;
  for (Index k = 0; k < owner_.block_count(); ++k) {
    auto top = block_top(owner_.shape()[k], blocks_[k]);
    if (!top) return std::nullopt;
    out.parts.push_back(*top);
  }
  return out;
}

std::string Ideal::describe() const {
  if (auto g = generator()) {
    if (*g == owner_.top()) return "Full";
    return "Principal(" + owner_.describe(*g) + ")";
  }
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k) out << ", ";
    switch (blocks_[k].kind) {
      case Kind::Principal: out << "Principal" << to_string(blocks_[k].generator); break;
      case Kind::Full: out << "Full"; break;
      case Kind::FiniteSupport: out << "FiniteSupport"; break;
    }
  }
  out << ')';
  return out.str();
}

Ideal meet(const Ideal& a, const Ideal& b) {
  if (!(a.owner() == b.owner())) throw Error(ErrorCode::DomainMismatch, "ideals of different algebras");
  std::vector<BlockIdeal> blocks;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    const BlockIdeal& x = a.blocks()[k];
    const BlockIdeal& y = b.blocks()[k];
    if (x.kind == Kind::Full) {
      blocks.push_back(y);
    } else if (y.kind == Kind::Full) {
      blocks.push_back(x);
    } else if (x.kind == Kind::Principal && y.kind == Kind::Principal) {
      blocks.push_back({Kind::Principal, intersect(x.generator, y.generator)});
    } else if (x.kind == Kind::FiniteSupport && y.kind == Kind::FiniteSupport) {
      blocks.push_back(x);
    } else {
      const Subset& g = x.kind == Kind::Principal ? x.generator : y.generator;
      if (g.cofinite) {
        throw Error(ErrorCode::UnrepresentableIdeal, "finite subsets of a proper cofinite set");
      }
      blocks.push_back({Kind::Principal, g});
    }
  }
  return Ideal::from_blocks(a.owner(), std::move(blocks));
}

Ideal join(const Ideal& a, const Ideal& b) {
  if (!(a.owner() == b.owner())) throw Error(ErrorCode::DomainMismatch, "ideals of different algebras");
  std::vector<BlockIdeal> blocks;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    const BlockIdeal& x = a.blocks()[k];
    const BlockIdeal& y = b.blocks()[k];
    if (x.kind == Kind::Full || y.kind == Kind::Full) {
      blocks.push_back({Kind::Full, {}});
    } else if (x.kind == Kind::Principal && y.kind == Kind::Principal) {
      blocks.push_back({Kind::Principal, unite(x.generator, y.generator)});
    } else if (x.kind == Kind::FiniteSupport && y.kind == Kind::FiniteSupport) {
      blocks.push_back(x);
    } else {
      // Finite sets joined with everything below g: all of the block once g
      // is cofinite, otherwise still the finite sets.
      const Subset& g = x.kind == Kind::Principal ? x.generator : y.generator;
      blocks.push_back(g.cofinite ? BlockIdeal{Kind::Full, {}} : BlockIdeal{Kind::FiniteSupport, {}});
    }
  }
  return Ideal::from_blocks(a.owner(), std::move(blocks));
}

DensityVerdict is_dense_ideal(const Ideal& ideal) {
  const Algebra& A = ideal.owner();
  for (Index k = 0; k < A.block_count(); ++k) {
    const BlockIdeal& b = ideal.blocks()[k];
    if (b.kind != Kind::Principal) continue;  // Full and finite support are dense
    // g is not the unit here; its complement in the block meets I only in 0.
    Element witness = A.bottom();
    witness.parts[k] = A.shape()[k].complement(b.generator);
    return {false, witness};
  }
  return {};
}

Ideal pseudocomplement(const Ideal& ideal) {
  const Algebra& A = ideal.owner();
  std::vector<BlockIdeal> blocks;
  for (Index k = 0; k < A.block_count(); ++k) {
    const BlockIdeal& b = ideal.blocks()[k];
    if (b.kind == Kind::Principal) {
      blocks.push_back({Kind::Principal, A.shape()[k].complement(b.generator)});
    } else {
      // Every nonzero element meets some finite set, and certainly the unit.
      blocks.push_back({Kind::Principal, Subset::none()});
    }
  }
  return Ideal::from_blocks(A, std::move(blocks));
}

bool is_simple(const Ideal& ideal) { return join(ideal, pseudocomplement(ideal)).contains(ideal.owner().top()); }

std::vector<Ideal> simple_ideals(const Algebra& algebra) {
  if (!algebra.is_finite()) {
    throw Error(ErrorCode::EnumerationUnsupported, "simple ideals are enumerated for finite algebras only");
  }
  std::vector<Ideal> out;
  for (const Element& g : algebra.elements()) {
    Ideal candidate = Ideal::principal(algebra, g);
    if (is_simple(candidate)) out.push_back(std::move(candidate));
  }
  return out;
}

PointSet l_set(const Ideal& ideal) {
  const Algebra& A = ideal.owner();
  PointSet out = PointSet::empty(A.shape());
  for (Index k = 0; k < A.block_count(); ++k) {
    const Universe& u = A.shape()[k];
    const BlockIdeal& b = ideal.blocks()[k];
    // A principal character at i hits I iff the atom {i} is in I; the free
    // character hits I iff I holds a cofinite element of the block.
    switch (b.kind) {
      case Kind::Principal:
        out.blocks[k] = {b.generator, u.is_infinite() && b.generator.cofinite};
        break;
      case Kind::Full: out.blocks[k] = {u.full(), u.is_infinite()}; break;
      case Kind::FiniteSupport: out.blocks[k] = {Subset::all(), false}; break;
    }
  }
  return out;
}

PointSet iota(const Ideal& ideal) {
  const Algebra& A = ideal.owner();
  PointSet out = PointSet::empty(A.shape());
  if (auto g = ideal.generator()) return stone_set(A, *g);  // s is monotone
  for (Index k = 0; k < A.block_count(); ++k) {
    const BlockIdeal& b = ideal.blocks()[k];
    Element top = A.bottom();
    if (b.kind == Kind::FiniteSupport) {
      // The union of s({i}) over all i: every principal character.
      out.blocks[k].principal = Subset::all();
      continue;
    }
    top.parts[k] = *block_top(A.shape()[k], b);
    out.blocks[k] = stone_set(A, top).blocks[k];
  }
  return out;
}

Ideal iota_inverse(const Algebra& algebra, const PointSet& open) {
  check_point_set(algebra.shape(), open);
  if (!is_open(algebra.shape(), open)) {
    throw Error(ErrorCode::NotOpen, to_string(open) + " is not open in S(" + algebra.describe() + ")");
  }
  std::vector<BlockIdeal> blocks;
  for (Index k = 0; k < algebra.block_count(); ++k) {
    const BlockSet& b = open.blocks[k];
    if (!algebra.shape()[k].is_infinite() || b.limit || !b.principal.cofinite) {
      blocks.push_back({Kind::Principal, b.principal});
    } else if (b.principal.is_all()) {
      blocks.push_back({Kind::FiniteSupport, {}});
    } else {
      throw Error(ErrorCode::UnrepresentableIdeal,
                  "the finite subsets of " + to_string(b.principal) + " form neither a principal nor the "
                  "finite-support ideal");
    }
  }
  return Ideal::from_blocks(algebra, std::move(blocks));
}

Ideal ko_ideal(const SpacePresentation& space) {
  const Algebra co = co_algebra(space);
  const Shape shape = space.shape();
  std::vector<BlockIdeal> blocks;
  for (Index k = 0; k < co.block_count(); ++k) {
    // Every clopen of the block is closed inside its unit, so all of them are
    // compact iff the unit is; otherwise only the finite ones are.
    const bool unit_compact = is_compact(shape, stone_set(co, co.block_unit(k)));
    blocks.push_back(unit_compact ? BlockIdeal{Kind::Full, {}} : BlockIdeal{Kind::FiniteSupport, {}});
  }
  return Ideal::from_blocks(co, std::move(blocks));
}

// ---------------------------------------------------------------------------

bool UnboundedSimpleIdeal::contains(const Element& a) const {
  algebra.check(a);
  for (Index k = 0; k < algebra.block_count(); ++k) {
    if (k != block && !a.parts[k].is_empty()) return false;
  }
  const Subset& part = a.parts[block];
  if (part.cofinite) return false;
  return std::all_of(part.support.begin(), part.support.end(), [&](Index i) { return indices.contains(i); });
}

bool UnboundedSimpleIdeal::is_upper_bound(const Element& u) const {
  algebra.check(u);
  const Subset& part = u.parts[block];
  if (!part.cofinite) return false;  // cannot contain an infinite class
  return std::none_of(part.support.begin(), part.support.end(), [&](Index i) { return indices.contains(i); });
}

std::optional<Element> UnboundedSimpleIdeal::refute(const Element& u) const {
  if (!is_upper_bound(u)) return std::nullopt;
  Index i = 0;
  while (indices.contains(i) || !u.parts[block].contains(i)) ++i;
  Element smaller = u;
  smaller.parts[block] = difference(u.parts[block], Subset::single(i));
  return smaller;
}

std::string UnboundedSimpleIdeal::describe() const {
  return "finite subsets of " + indices.describe() + " in block " + std::to_string(block);
}

std::vector<Element> candidate_upper_bounds(const UnboundedSimpleIdeal& witness, std::size_t count) {
  std::vector<Element> out;
  std::vector<Index> outside;
  for (Index i = 0; outside.size() < 4 * count + 4; ++i) {
    if (!witness.indices.contains(i)) outside.push_back(i);
  }
  for (std::size_t n = 0; n < count; ++n) {
    // Drop n indices from outside the class, starting further out each time.
    std::vector<Index> dropped(outside.begin() + static_cast<std::ptrdiff_t>(n),
                               outside.begin() + static_cast<std::ptrdiff_t>(2 * n));
    Element u = witness.algebra.top();
    u.parts[witness.block] = Subset::cofinite_except(std::move(dropped));
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

// Simple ideals of the block ideal below `top` in a small finite block:
// every one must have a least upper bound in the block.
bool finite_block_joins_exist(const Universe& u, const Subset& top) {
  const Algebra block = Algebra::finite_cofinite(u);
  const auto elems = block.elements();
  for (const Element& h : elems) {
    if (!is_subset(h.parts[0], top)) continue;
    // Pseudocomplement of the ideal below h inside the ideal below top.
    Subset negation;
    for (const Element& c : elems) {
      if (is_subset(c.parts[0], top) && intersect(c.parts[0], h.parts[0]).is_empty()) {
        negation = unite(negation, c.parts[0]);
      }
    }
    if (unite(h.parts[0], negation) != top) continue;  // not simple
    // Least upper bound of the members of the ideal below h.
    std::optional<Subset> least;
    for (const Element& v : elems) {
      const bool bounds = std::all_of(elems.begin(), elems.end(), [&](const Element& c) {
        return !is_subset(c.parts[0], h.parts[0]) || is_subset(c.parts[0], v.parts[0]);
      });
      if (bounds && (!least || is_subset(v.parts[0], *least))) least = v.parts[0];
    }
    const bool is_least = least && std::all_of(elems.begin(), elems.end(), [&](const Element& v) {
      const bool bounds = std::all_of(elems.begin(), elems.end(), [&](const Element& c) {
        return !is_subset(c.parts[0], h.parts[0]) || is_subset(c.parts[0], v.parts[0]);
      });
      return !bounds || is_subset(*least, v.parts[0]);
    });
    if (!is_least) return false;
  }
  return true;
}

bool witness_is_simple_and_unbounded(const Ideal& ideal, const UnboundedSimpleIdeal& w) {
  const Algebra& A = ideal.owner();
  // Simplicity inside I: each finite c splits as its part in the class plus
  // a part disjoint from every member of the witness.
  for (Index m = 0; m < 12; ++m) {
    std::vector<Index> members;
    for (Index i = 0; i <= m; ++i) members.push_back(i * 3 % 13);
    Element c = A.bottom();
    c.parts[w.block] = Subset::finite(members);
    Element inside = c;
    Element outside = c;
    std::vector<Index> in_idx;
    std::vector<Index> out_idx;
    for (Index i : c.parts[w.block].support) (w.indices.contains(i) ? in_idx : out_idx).push_back(i);
    inside.parts[w.block] = Subset::finite(in_idx);
    outside.parts[w.block] = Subset::finite(out_idx);
    if (!ideal.contains(c) || !w.contains(inside)) return false;
    for (Index i = 0; i < 8; ++i) {
      if (!w.indices.contains(i)) continue;
      if (!A.is_zero(A.meet(outside, A.atom(w.block, i)))) return false;
    }
    if (A.join(inside, outside) != c) return false;
  }
  // No finite element bounds an infinite class.
  if (w.is_upper_bound(A.block_unit(w.block)) == false) return false;
  Element finite_probe = A.bottom();
  finite_probe.parts[w.block] = Subset::finite({0, 1, 2, 3, 4, 5, 6, 7});
  if (w.is_upper_bound(finite_probe)) return false;
  // Every sampled upper bound is beaten by a strictly smaller one.
  for (const Element& u : candidate_upper_bounds(w, 5)) {
    auto smaller = w.refute(u);
    if (!smaller || !w.is_upper_bound(*smaller) || !A.leq(*smaller, u) || *smaller == u) return false;
  }
  return true;
}

}  // namespace

ZlbaVerdict decide_zlba(const Ideal& ideal, ResidueClass pattern) {
  ZlbaVerdict v;
  const DensityVerdict density = is_dense_ideal(ideal);
  v.is_lba = density.dense;
  if (!v.is_lba) {
    v.density_witness = density.witness;
    v.reason = "ideal is not dense";
    return v;
  }
  const Algebra& A = ideal.owner();
  const PointSet l = l_set(ideal);
  const TraceVerdict traces = traces_are_all_clopens(A.shape(), l, pattern);
  v.is_zlba = traces.complete;
  if (v.is_zlba) {
    v.reason = "every clopen of L_I^A is the trace of an element";
    return v;
  }
  v.clopen_witness = traces.witness;
  v.join_witness = UnboundedSimpleIdeal{A, traces.witness->block, pattern};
  v.reason = "L_I^A has an infinite discrete block: " + traces.witness->describe() + " is clopen but no trace";
  return v;
}

ZlbaVerdict decide_zlba_by_joins(const Ideal& ideal, ResidueClass pattern) {
  ZlbaVerdict v;
  const DensityVerdict density = is_dense_ideal(ideal);
  v.is_lba = density.dense;
  if (!v.is_lba) {
    v.density_witness = density.witness;
    v.reason = "ideal is not dense";
    return v;
  }
  const Algebra& A = ideal.owner();
  for (Index k = 0; k < A.block_count(); ++k) {
    const Universe& u = A.shape()[k];
    const BlockIdeal& b = ideal.blocks()[k];
    if (b.kind == Kind::FiniteSupport) {
      UnboundedSimpleIdeal w{A, k, pattern};
      if (!witness_is_simple_and_unbounded(ideal, w)) {
        throw Error(ErrorCode::NotValidated, "could not validate the unbounded simple ideal " + w.describe());
      }
      v.join_witness = w;
      v.reason = "simple ideal " + w.describe() + " has no join";
      return v;
    }
    if (!u.is_infinite() && u.size() <= kEnumeratedBlockAtoms) {
      if (!finite_block_joins_exist(u, *block_top(u, b))) {
        throw Error(ErrorCode::NotValidated, "finite block " + std::to_string(k) + " lacks a join");
      }
    }
    // Otherwise the block ideal is the Boolean algebra below its top; its
    // simple ideals are the principal ideals below h, whose join is h.
  }
  v.is_zlba = true;
  v.reason = "every simple ideal of I has a join";
  return v;
}

LbaPair::LbaPair(Ideal ideal, ResidueClass pattern) : ideal_(std::move(ideal)), verdict_(decide_zlba(ideal_, pattern)) {}

LbaConditionVerdict lba_condition(const Homomorphism& phi, const Ideal& source, const Ideal& target) {
  if (!(phi.domain() == source.owner()) || !(phi.codomain() == target.owner())) {
    throw Error(ErrorCode::DomainMismatch, "ideals do not live on the homomorphism's algebras");
  }
  const PointSet l_target = l_set(target);
  const auto escape = first_escape(phi.dual(), l_target, l_set(source));
  if (!escape) return {};
  const Algebra& B = target.owner();
  Element b = B.bottom();
  if (escape->index) {
    b = B.atom(escape->block, *escape->index);
  } else {
    b.parts[escape->block] = *block_top(B.shape()[escape->block], target.blocks()[escape->block]);
  }
  return {false, b};
}

LbaMorphism::LbaMorphism(LbaPair source, LbaPair target, Homomorphism map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!(map_.domain() == source_.algebra()) || !(map_.codomain() == target_.algebra())) {
    throw Error(ErrorCode::DomainMismatch, "homomorphism does not connect the two pairs");
  }
  const LbaConditionVerdict verdict = lba_condition(map_, source_.ideal(), target_.ideal());
  if (!verdict.holds) {
    throw Error(ErrorCode::LbaConditionFailed,
                "no member of the source ideal maps above " + target_.algebra().describe(*verdict.witness));
  }
}

LbaMorphism LbaMorphism::identity(const LbaPair& pair) {
  return LbaMorphism(pair, pair, Homomorphism::identity(pair.algebra()));
}

LbaMorphism compose(const LbaMorphism& outer, const LbaMorphism& inner) {
  if (!(inner.target() == outer.source())) {
    throw Error(ErrorCode::DomainMismatch, "LBA morphisms are not composable");
  }
  return LbaMorphism(inner.source(), outer.target(), compose(outer.map(), inner.map()));
}

}  // namespace stonedual
