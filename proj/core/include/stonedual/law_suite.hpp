#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/points.hpp"

namespace stonedual {

struct LawRecord {
  std::string law;
  std::string case_id;
  bool pass = true;
  std::string witness;
};

struct LawReport {
  std::vector<LawRecord> records;
  bool vacuous = false;  // nothing was checked

  bool all_pass() const noexcept;
  std::size_t failures() const noexcept;
  /// One JSON object per record: {"law","case","pass","witness"}.
  std::string to_json_lines() const;
};

struct LawSuiteOptions {
  std::uint64_t seed = 0;
  Index max_atoms = 3;            // finite algebras and sets checked exhaustively up to this size
  std::size_t fc_morphisms = 200; // random composable pairs on finite-cofinite objects
  bool inject_mutant = false;     // add a morphism that breaks f(x') = x' o phi
  bool empty_catalog = false;     // run with no objects at all
};

/// Identity and composition laws for every functor, plus the pointwise
/// morphism condition on every generated morphism.
LawReport run_law_suite(const LawSuiteOptions& options);

/// Tarski duality on finite sets: At(P(n)) recovers the n points and
/// At(P(f)) = f, for `cases` random functions between sets of size at most
/// `max_size`.
LawReport run_tarski_suite(std::uint64_t seed, std::size_t cases = 500, Index max_size = 6);

/// A random member of the exception-table class between two shapes.  The
/// target must have at least one point whenever the source does.
PointMap random_point_map(const Shape& source, const Shape& target, std::mt19937_64& rng);

/// Drops exceptions from `map` one at a time while `fails` keeps holding.
PointMap shrink(const PointMap& map, const std::function<bool(const PointMap&)>& fails);

}  // namespace stonedual
