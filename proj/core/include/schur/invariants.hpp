// Isomorphism invariants: abelian invariants, IPAD and the prescreen vector.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schur/subgroup.hpp"

namespace schur {

/// Elementary divisors of H/[H,H], ascending; each a power of p.
std::vector<long long> abelian_invariants(const Subgroup& h);
std::vector<long long> abelian_invariants(GroupPtr g);

std::string format_invariants(const std::vector<long long>& inv);

/// Index-p abelianization data of a 2-generated group.
struct IPAD {
  std::vector<long long> top;
  /// Abelian invariants of the maximal subgroups, sorted.
  std::vector<std::vector<long long>> subquotients;

  friend bool operator==(const IPAD&, const IPAD&) = default;
  friend auto operator<=>(const IPAD&, const IPAD&) = default;
};

/// Throws Error unless d(G) = 2.
IPAD ipad(GroupPtr g);
/// Rendered as "[3,3]; [3,3,3], [3,9]^3" with ascending invariants.
std::string format_ipad(const IPAD& x);

/// Number of elements of order p^k, indexed by k.  Enumerates the group.
std::vector<long long> element_order_counts(const PcGroup& g);

/// Invariant vector used before any isomorphism search.
struct GroupInvariants {
  int prime = 0;
  int order_log = 0;
  std::vector<long long> abelian;
  std::vector<int> zassenhaus_dims;
  std::vector<int> p_central_dims;
  int derived_log = 0;
  int centre_log = 0;
  std::vector<long long> order_counts;  // empty above the enumeration bound

  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

/// Element statistics are included when |G| <= p^enumerate_max_log.
GroupInvariants group_invariants(GroupPtr g, int enumerate_max_log = 10);

}  // namespace schur
