// p-covers, p-multiplicators, nuclei and immediate descendants.
#pragma once

#include <vector>

#include "schur/homomorphism.hpp"
#include "schur/linalg.hpp"
#include "schur/recipes.hpp"
#include "schur/subgroup.hpp"

namespace schur {

struct CoverData {
  GroupPtr base;
  GroupPtr cover;
  GroupMap projection;     // cover -> base
  Subgroup multiplicator;  // kernel of the projection
  Subgroup nucleus;        // P_c(cover), c the p-class of the base
  int mu_rank = 0;
  int nu_rank = 0;
};

/// Default bound on d(G) for cover computations.
inline constexpr int kCoverRankBound = 3;

/// The cover's polycyclic generators are those of the p-central presentation
/// of the base followed by the multiplicator basis (tails).
CoverData p_cover(GroupPtr g, int max_rank = kCoverRankBound);

/// log_p |E(G*)|.  With `require_in_multiplicator`, E(G*) must lie in the
/// multiplicator.
int dim_E_in_cover(const CoverData& cd, const SubgroupRecipe& e, bool require_in_multiplicator = true);

/// Quotient of the cover by a subspace of the multiplicator, given by the
/// rows of an RREF matrix over the multiplicator basis.
GroupPtr cover_quotient(const CoverData& cd, const linalg::Matrix& subspace);

/// Immediate descendants of order p^step * |G|, pairwise non-isomorphic, in
/// the order of the first allowable subspace producing each class.
std::vector<GroupPtr> immediate_descendants(GroupPtr g, int step, int threads = 1);
std::vector<GroupPtr> immediate_descendants(const CoverData& cd, int step, int threads = 1);

/// Keep the first representative of every isomorphism class.
std::vector<GroupPtr> dedupe_isomorphic(const std::vector<GroupPtr>& groups);

}  // namespace schur
