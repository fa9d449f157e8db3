// Rewriting a pc group on a generating sequence that refines the lower
// p-central series, with every generator of weight > 1 defined as a p-th
// power or a commutator with a weight-1 generator.
#pragma once

#include <vector>

#include "schur/homomorphism.hpp"

namespace schur {

struct Standardized {
  GroupPtr group;     // p-central presentation with definitions
  GroupMap to_input;  // isomorphism group -> input
  GroupMap from_input;  // inverse isomorphism
};

/// Weight-1 generators are chosen greedily from the input's polycyclic
/// generators; higher layers from p-th powers and commutators with weight-1
/// generators, in a fixed order.  Deterministic.
Standardized to_pcentral(GroupPtr g);

/// Standardize only when the presentation has no definitions.
Standardized ensure_pcentral(GroupPtr g);

}  // namespace schur
