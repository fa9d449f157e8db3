// Relation ranks relative to a characteristic subgroup, the step from Schur
// D-quotients to Schur E-quotients, and the recursive powerfulness search.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "schur/covers.hpp"
#include "schur/recipes.hpp"
#include "schur/subgroup.hpp"

namespace schur {

/// Deepest free nilpotent quotient F_n / P_c(F_n) used for relation ranks.
inline constexpr int kFreeQuotientDepth = 4;

/// F_n / P_c(F_n) with definitions, built by iterated p-covers and cached.
GroupPtr free_p_class_quotient(int p, int n, int c);

struct RelRankInfo {
  int rank = 0;
  /// Free quotient depths at which the rank was computed; empty when the
  /// p-cover of K had to stand in for the free quotient.
  std::vector<int> depths;
  bool via_cover = false;
};

/// r_E(K) = dim N / E N^* for K = F_n / N.  Computed in F_n / P_c(F_n) for
/// every c from p-class(K) + 1 up to kFreeQuotientDepth and required to agree;
/// when p-class(K) >= kFreeQuotientDepth the p-cover K^* = F_n / N^* is used.
/// Throws unless E(K) = 1.
RelRankInfo rel_rank_info(GroupPtr k, const SubgroupRecipe& e);
int rel_rank(GroupPtr k, const SubgroupRecipe& e);

/// D^* lies in E, checked in F_n / P_c(F_n) for c = kFreeQuotientDepth.
bool star_contained(int p, int n, const SubgroupRecipe& d, const SubgroupRecipe& e);

struct StepOptions {
  /// Restrict to subspaces that are odd for a lift of sigma to the p-cover.
  /// Every Schur E-quotient arises this way up to isomorphism.
  bool odd_subspaces_only = true;
  int threads = 1;
};

struct StepResult {
  std::vector<GroupPtr> groups;
  /// mu(H) - n - dim E(H^*)
  int step = 0;
  int mu = 0;
  int dim_e_in_cover = 0;
  long long candidates = 0;
  long long sigma_rejected = 0;
};

/// All Schur E-quotients K with K / D(K) = H up to isomorphism, as quotients
/// of H^* by subspaces U of the multiplicator with E(H^*) <= U,
/// dim U = n + dim E(H^*) and U + D(H^*) = ker(H^* -> H), filtered by
/// E(K) = 1 and the sigma test.
StepResult schur_step(GroupPtr h, const SubgroupRecipe& e, const SubgroupRecipe& d, const StepOptions& opt = {});

enum class Verdict { all_powerful, never_powerful, mixed, inconclusive };
std::string verdict_name(Verdict v);

struct RecursionOptions {
  int max_class = 12;
  int threads = 1;
  /// Wall-clock budget in seconds; 0 means none.
  double time_budget = 0;
  /// Called with every group the search constructs.
  std::function<void(const GroupPtr&)> observer;
};

struct RecursionReport {
  std::string type;
  std::string e_name;
  Verdict verdict = Verdict::inconclusive;
  int max_rank = 0;  // over branches where E(G) is powerful
  int levels_explored = 0;
  long long groups_examined = 0;
  long long positive = 0;
  long long negative = 0;
  long long unresolved = 0;
  std::string note;
};

/// Walk G / P_j(G) E_2(G) for all weak Schur sigma-groups G with
/// G / D_4(G) = h0, starting from the Schur P_3-quotients over h0, and decide
/// whether E(G) is powerful for all, none or some of them.
RecursionReport powerfulness_recursion(GroupPtr h0, const SubgroupRecipe& e, const RecursionOptions& opt = {});

/// {type, E, verdict, max_rank, levels_explored, groups_examined}
std::string report_json(const RecursionReport& r);

}  // namespace schur
