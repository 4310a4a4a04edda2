#pragma once

// Brute-force reference models used as test oracles.  Finite algebras are
// powersets of {0..n-1} held as bitmasks; finite-cofinite sets are expanded
// into explicit membership over a window plus a tail bit.  Nothing here calls
// into the library's set or lattice logic.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/ideal.hpp"
#include "stonedual/points.hpp"

namespace oracle {

using Mask = std::uint32_t;

inline Mask full_mask(unsigned n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

// ---------------------------------------------------------------------------
// Finite powerset algebras.

/// Element of a single-block finite algebra as a mask of atom indices.
inline Mask to_mask(const stonedual::Element& a) {
  Mask m = 0;
  for (auto i : a.parts.at(0).support) m |= Mask{1} << i;
  return m;
}

inline stonedual::Element from_mask(const stonedual::Algebra& A, Mask m) {
  std::vector<stonedual::Index> members;
  for (unsigned i = 0; i < 32; ++i) {
    if (m & (Mask{1} << i)) members.push_back(i);
  }
  return A.make({stonedual::Subset::finite(members)});
}

/// Points of a finite discrete block as a mask.
inline Mask to_mask(const stonedual::PointSet& x) {
  Mask m = 0;
  for (auto i : x.blocks.at(0).principal.support) m |= Mask{1} << i;
  return m;
}

/// Every map from the 2^n elements to {0,1} that preserves 0, 1, meet, join
/// and complement, as the set of elements it sends to 1.
inline std::vector<std::vector<bool>> homs_to_two(unsigned n) {
  const Mask size = Mask{1} << n;
  const Mask top = full_mask(n);
  std::vector<std::vector<bool>> out;
  const std::uint64_t maps = std::uint64_t{1} << size;
  for (std::uint64_t f = 0; f < maps; ++f) {
    auto v = [&](Mask a) { return ((f >> a) & 1) != 0; };
    bool ok = !v(0) && v(top);
    for (Mask a = 0; ok && a < size; ++a) {
      if (v(top & ~a) == v(a)) ok = false;
      for (Mask b = 0; ok && b < size; ++b) {
        if (v(a & b) != (v(a) && v(b)) || v(a | b) != (v(a) || v(b))) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<bool> table(size);
    for (Mask a = 0; a < size; ++a) table[a] = v(a);
    out.push_back(table);
  }
  return out;
}

/// Every ideal of the powerset of n atoms, each as the set of member masks.
/// Feasible for n <= 4 (2^16 candidate subsets).
inline std::vector<std::set<Mask>> all_ideals(unsigned n) {
  const Mask size = Mask{1} << n;
  std::vector<std::set<Mask>> out;
  const std::uint64_t candidates = std::uint64_t{1} << size;
  for (std::uint64_t s = 0; s < candidates; ++s) {
    auto in = [&](Mask a) { return ((s >> a) & 1) != 0; };
    if (!in(0)) continue;
    bool ok = true;
    for (Mask a = 0; ok && a < size; ++a) {
      if (!in(a)) continue;
      for (Mask b = 0; ok && b < size; ++b) {
        if ((b & ~a) == 0 && !in(b)) ok = false;  // downward closed
        if (in(b) && !in(a | b)) ok = false;       // closed under joins
      }
    }
    if (!ok) continue;
    std::set<Mask> members;
    for (Mask a = 0; a < size; ++a) {
      if (in(a)) members.insert(a);
    }
    out.push_back(members);
  }
  return out;
}

/// Union of the point sets s(a) over the members of an ideal, as a mask.
inline Mask union_of_stone_sets(const std::set<Mask>& ideal) {
  Mask u = 0;
  for (Mask a : ideal) u |= a;
  return u;
}

/// Preimage of M under f, both sides as masks.
inline Mask preimage(const std::vector<unsigned>& f, Mask m) {
  Mask out = 0;
  for (unsigned i = 0; i < f.size(); ++i) {
    if (m & (Mask{1} << f[i])) out |= Mask{1} << i;
  }
  return out;
}

/// At(P(f))(i): the meet of all M with {i} below P(f)(M), read off as the
/// unique point of that meet.
inline unsigned at_of_preimage(const std::vector<unsigned>& f, unsigned target, unsigned i) {
  Mask meet = full_mask(target);
  for (Mask m = 0; m < (Mask{1} << target); ++m) {
    if (preimage(f, m) & (Mask{1} << i)) meet &= m;
  }
  for (unsigned j = 0; j < target; ++j) {
    if (meet == (Mask{1} << j)) return j;
  }
  return target;  // not an atom
}

// ---------------------------------------------------------------------------
// Finite-cofinite sets over the naturals, expanded on a window.

struct Explicit {
  std::vector<bool> window;
  bool tail = false;  // membership of every index past the window

  bool has(unsigned i) const { return i < window.size() ? window[i] : tail; }
  friend bool operator==(const Explicit&, const Explicit&) = default;
};

/// Expands a subset; the window must cover every index in its support.
inline Explicit expand(const stonedual::Subset& s, unsigned width) {
  Explicit e;
  e.window.assign(width, s.cofinite);
  for (auto i : s.support) e.window.at(i) = !s.cofinite;
  e.tail = s.cofinite;
  return e;
}

inline Explicit pointwise(const Explicit& a, const Explicit& b, const std::function<bool(bool, bool)>& op) {
  Explicit out;
  out.window.resize(a.window.size());
  for (std::size_t i = 0; i < a.window.size(); ++i) out.window[i] = op(a.window[i], b.window[i]);
  out.tail = op(a.tail, b.tail);
  return out;
}

/// Character evaluation on an expanded set: principal i tests index i, the
/// free character tests the tail.
inline bool evaluate(const Explicit& a, const stonedual::Point& x) { return x.index ? a.has(*x.index) : a.tail; }

}  // namespace oracle
