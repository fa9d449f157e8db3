// Homomorphisms between pc groups and quotient presentations.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "schur/pcgroup.hpp"
#include "schur/subgroup.hpp"

namespace schur {

/// A map given by the images of the polycyclic generators of the source.
struct GroupMap {
  GroupPtr source;
  GroupPtr target;
  std::vector<Element> images;

  Element apply(const Element& x) const;
  /// Every power and commutator relation of the source holds for the images.
  bool is_valid() const;
  Subgroup image(const Subgroup& h) const;
  Subgroup image() const;
  /// Source elements mapping to the identity.
  Subgroup kernel() const;
  GroupMap compose(const GroupMap& after) const;  // after o this
};

/// Checked construction; nullopt when a relation fails.
std::optional<GroupMap> homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> images);

/// Extend images of the weight-1 generators of a presentation with
/// definitions to all polycyclic generators.  No relation check.
std::vector<Element> extend_by_definitions(const PcGroup& source, const PcGroup& target,
                                           std::span<const Element> gen_images);

GroupMap identity_map(GroupPtr g);

struct Quotient {
  GroupPtr group;
  GroupMap projection;
};

/// Presentation of G/N on the generators at depths not covered by N.
/// Throws Error when N is not normal.
Quotient quotient(const Subgroup& n);

}  // namespace schur
