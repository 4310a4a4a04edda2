#include "stonedual/subset.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "stonedual/error.hpp"

namespace stonedual {

namespace {

std::vector<Index> sorted_unique(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Index> set_and(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Index> set_or(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Index> set_minus(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedDescriptor: return "MalformedDescriptor";
    case ErrorCode::MalformedMorphism: return "MalformedMorphism";
    case ErrorCode::ForeignElement: return "ForeignElement";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotASubset: return "NotASubset";
    case ErrorCode::NotOpen: return "NotOpen";
    case ErrorCode::UnrepresentableCO: return "UnrepresentableCO";
    case ErrorCode::UnrepresentableIdeal: return "UnrepresentableIdeal";
    case ErrorCode::FiniteSupportOnNonFcBlock: return "FiniteSupportOnNonFcBlock";
    case ErrorCode::EnumerationUnsupported: return "EnumerationUnsupported";
    case ErrorCode::NotValidated: return "NotValidated";
    case ErrorCode::NotZlba: return "NotZlba";
    case ErrorCode::LbaConditionFailed: return "LbaConditionFailed";
    case ErrorCode::FiniteBackendOnly: return "FiniteBackendOnly";
  }
  return "Unknown";
}

Subset Subset::finite(std::vector<Index> members) { return {false, sorted_unique(std::move(members))}; }

Subset Subset::cofinite_except(std::vector<Index> excluded) {
  return {true, sorted_unique(std::move(excluded))};
}

bool Subset::contains(Index i) const {
  const bool listed = std::binary_search(support.begin(), support.end(), i);
  return cofinite ? !listed : listed;
}

Index Subset::bound() const noexcept { return support.empty() ? 0 : support.back() + 1; }

Subset intersect(const Subset& a, const Subset& b) {
  if (!a.cofinite && !b.cofinite) return {false, set_and(a.support, b.support)};
  if (!a.cofinite) return {false, set_minus(a.support, b.support)};
  if (!b.cofinite) return {false, set_minus(b.support, a.support)};
  return {true, set_or(a.support, b.support)};
}

Subset unite(const Subset& a, const Subset& b) {
  if (!a.cofinite && !b.cofinite) return {false, set_or(a.support, b.support)};
  if (!a.cofinite) return {true, set_minus(b.support, a.support)};
  if (!b.cofinite) return {true, set_minus(a.support, b.support)};
  return {true, set_and(a.support, b.support)};
}

Subset difference(const Subset& a, const Subset& b) {
  return intersect(a, Subset{!b.cofinite, b.support});
}

bool is_subset(const Subset& a, const Subset& b) {
  if (!a.cofinite && !b.cofinite) {
    return std::includes(b.support.begin(), b.support.end(), a.support.begin(), a.support.end());
  }
  if (!a.cofinite) return set_and(a.support, b.support).empty();
  if (!b.cofinite) return false;
  return std::includes(a.support.begin(), a.support.end(), b.support.begin(), b.support.end());
}

std::optional<Index> select(const Subset& s, Index n) {
  if (!s.cofinite) {
    if (n < s.support.size()) return s.support[n];
    return std::nullopt;
  }
  // Walk past the excluded indices that fall below the candidate.
  Index candidate = n;
  for (Index excluded : s.support) {
    if (excluded <= candidate) {
      ++candidate;
    } else {
      break;
    }
  }
  return candidate;
}

Index rank(const Subset& s, Index i) {
  const auto below = static_cast<Index>(
      std::lower_bound(s.support.begin(), s.support.end(), i) - s.support.begin());
  return s.cofinite ? i - below : below;
}

Subset Universe::full() const {
  if (!size_) return Subset::all();
  std::vector<Index> all(*size_);
  for (Index i = 0; i < *size_; ++i) all[i] = i;
  return {false, std::move(all)};
}

Subset Universe::complement(const Subset& s) const {
  return normalize(Subset{!s.cofinite, s.support});
}

Subset Universe::normalize(const Subset& s) const {
  if (!size_) return s;
  if (!s.cofinite) {
    std::vector<Index> kept;
    for (Index i : s.support) {
      if (i < *size_) kept.push_back(i);
    }
    return {false, std::move(kept)};
  }
  std::vector<Index> members;
  for (Index i = 0; i < *size_; ++i) {
    if (!std::binary_search(s.support.begin(), s.support.end(), i)) members.push_back(i);
  }
  return {false, std::move(members)};
}

bool Universe::is_canonical(const Subset& s) const {
  if (!std::is_sorted(s.support.begin(), s.support.end())) return false;
  if (std::adjacent_find(s.support.begin(), s.support.end()) != s.support.end()) return false;
  if (!size_) return true;
  if (s.cofinite) return false;
  return s.support.empty() || s.support.back() < *size_;
}

std::optional<std::uint64_t> Universe::count(const Subset& s) const {
  if (!s.cofinite) return s.support.size();
  if (!size_) return std::nullopt;
  return normalize(s).support.size();
}

std::string ResidueClass::describe() const {
  if (modulus == 2 && residue == 0) return "evens";
  if (modulus == 2 && residue == 1) return "odds";
  std::ostringstream out;
  out << "indices congruent to " << residue << " mod " << modulus;
  return out.str();
}

Index first_disagreement(const Subset& s, ResidueClass pattern) {
  if (pattern.modulus < 2) {
    throw Error(ErrorCode::MalformedDescriptor, "residue class must have modulus >= 2");
  }
  const Index limit = s.bound() + 2 * pattern.modulus;
  for (Index i = 0; i < limit; ++i) {
    if (s.contains(i) != pattern.contains(i)) return i;
  }
  return limit;  // unreachable for modulus >= 2
}

std::string to_string(const Subset& s) {
  std::ostringstream out;
  out << (s.cofinite ? "cofinite{" : "finite{");
  for (std::size_t i = 0; i < s.support.size(); ++i) {
    if (i) out << ',';
    out << s.support[i];
  }
  out << '}';
  return out.str();
}

}  // namespace stonedual
