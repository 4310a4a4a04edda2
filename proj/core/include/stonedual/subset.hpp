#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stonedual {

using Index = std::uint32_t;

/// A finite or cofinite set of indices.  `support` holds the members in
/// finite mode and the excluded indices in cofinite mode; it is always
/// sorted and duplicate-free.  Set operations below are taken relative to
/// the naturals; use Universe to complement or normalize inside a finite
/// index range.
struct Subset {
  bool cofinite = false;
  std::vector<Index> support;

  static Subset none() { return {}; }
  static Subset all() { return {true, {}}; }
  static Subset finite(std::vector<Index> members);
  static Subset cofinite_except(std::vector<Index> excluded);
  static Subset single(Index i) { return {false, {i}}; }

  bool contains(Index i) const;
  bool is_empty() const noexcept { return !cofinite && support.empty(); }
  bool is_all() const noexcept { return cofinite && support.empty(); }
  /// One past the largest index named in the support (0 when empty).
  Index bound() const noexcept;

  friend auto operator<=>(const Subset&, const Subset&) = default;
};

Subset intersect(const Subset& a, const Subset& b);
Subset unite(const Subset& a, const Subset& b);
Subset difference(const Subset& a, const Subset& b);
bool is_subset(const Subset& a, const Subset& b);

/// n-th member (0-based) of a subset; nullopt when it has fewer members.
std::optional<Index> select(const Subset& s, Index n);
/// Number of members strictly below `i`.
Index rank(const Subset& s, Index i);

/// Index range of one block: either {0, ..., n-1} or all of the naturals.
class Universe {
 public:
  static Universe naturals() { return Universe(std::nullopt); }
  static Universe finite(Index n) { return Universe(n); }

  bool is_infinite() const noexcept { return !size_.has_value(); }
  /// Number of indices; only meaningful for finite universes.
  Index size() const noexcept { return size_.value_or(0); }
  bool in_range(Index i) const noexcept { return !size_ || i < *size_; }

  Subset full() const;
  Subset complement(const Subset& s) const;
  /// Canonical form: over a finite universe every set is in finite mode.
  Subset normalize(const Subset& s) const;
  bool is_canonical(const Subset& s) const;
  /// Number of members; nullopt for an infinite set.
  std::optional<std::uint64_t> count(const Subset& s) const;

  friend auto operator<=>(const Universe&, const Universe&) = default;

 private:
  explicit Universe(std::optional<Index> size) : size_(size) {}
  std::optional<Index> size_;
};

/// {i : i mod modulus == residue}; the default is the even indices.
struct ResidueClass {
  Index modulus = 2;
  Index residue = 0;

  bool contains(Index i) const noexcept { return i % modulus == residue; }
  std::string describe() const;

  friend auto operator<=>(const ResidueClass&, const ResidueClass&) = default;
};

/// Smallest index on which the finite-or-cofinite `s` and the residue class
/// disagree.  Such an index always exists when modulus >= 2 because the
/// class is infinite and coinfinite.
Index first_disagreement(const Subset& s, ResidueClass pattern);

std::string to_string(const Subset& s);

}  // namespace stonedual
