#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "stonedual/algebra.hpp"
#include "stonedual/ideal.hpp"
#include "stonedual/points.hpp"
#include "stonedual/space.hpp"

namespace stonedual::dsl {

/// Malformed JSON text, positioned at the offending character (1-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed JSON describing an invalid object; `invariant` names the rule.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& message);
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// An algebra with a set of its characters: {"algebra": ..., "points": ...}.
struct PairObject {
  Algebra algebra;
  PointSet points;
  friend bool operator==(const PairObject&, const PairObject&) = default;
};

/// {"kind": "set", "size": n}: a finite set for the Tarski functor P.
struct FiniteSet {
  Index size = 0;
  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

/// {"kind": "function", "map": [...], "target": m}: a function between
/// finite sets {0..n-1} -> {0..m-1}.
struct FiniteFunction {
  std::vector<Index> map;
  Index target = 0;
  friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;
};

using Object =
    std::variant<Algebra, PairObject, Ideal, SpacePresentation, Homomorphism, SpaceMap, FiniteSet, FiniteFunction>;

std::string_view kind_name(const Object& object);

/// Parses one object.  Throws ParseError or ValidationError.
Object parse_object(const std::string& text);
/// Canonical JSON text; parse_object(render(o)) == o.
std::string render(const Object& object);

enum class Format { Human, Json };

struct Command {
  std::string verb;     // dual | check | roundtrip | catalog | validate
  std::string functor;  // dual: F G E Ep Fp Gp theta-t theta-a P At
  std::string law;      // check: zlba lba dense simple z dz ldz stone iota coherence functors tarski all
  std::string pair;     // roundtrip: E
  std::string input;    // path or inline JSON
  Format format = Format::Human;
  std::uint64_t seed = 0;
  Index max_atoms = 3;
};

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 verdict false, 2 input or representation error
  std::string output;
};

RunResult run(const Command& command);

}  // namespace stonedual::dsl
