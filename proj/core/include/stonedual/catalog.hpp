#pragma once

#include <string>
#include <vector>

#include "stonedual/algebra.hpp"
#include "stonedual/ideal.hpp"
#include "stonedual/points.hpp"
#include "stonedual/space.hpp"

namespace stonedual {

/// Version of the built-in object catalog; bump when entries change.
inline constexpr int kCatalogVersion = 1;

struct CatalogAlgebra {
  std::string id;
  Algebra algebra;
};

struct CatalogPair {
  std::string id;
  Algebra algebra;
  PointSet points;
  bool z = false;
  bool dz = false;
  bool ldz = false;
};

struct CatalogLba {
  std::string id;
  Ideal ideal;
  bool lba = false;
  bool zlba = false;
};

struct CatalogSpace {
  std::string id;
  SpacePresentation space;
  bool representable = true;  // CO(X) has a representable backend
};

struct Catalog {
  int version = kCatalogVersion;
  std::vector<CatalogAlgebra> algebras;
  std::vector<CatalogPair> pairs;
  std::vector<CatalogLba> lba_pairs;
  std::vector<CatalogSpace> spaces;
};

/// Worked examples: finite algebras with up to four atoms, finite-cofinite
/// algebras and products, pairs and ideals on them (positive and negative),
/// and presented spaces including the unrepresentable discrete one.
const Catalog& builtin_catalog();

}  // namespace stonedual
