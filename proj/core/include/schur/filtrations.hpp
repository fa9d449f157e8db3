// Zassenhaus filtration, lower p-central series and relative Frattini
// subgroups of finite p-groups.
#pragma once

#include <string>
#include <vector>

#include "schur/subgroup.hpp"

namespace schur {

enum class FiltrationKind { zassenhaus, lower_p_central };

struct FiltrationChain {
  FiltrationKind kind = FiltrationKind::zassenhaus;
  /// Starts at the whole group and ends at the trivial subgroup.  Zassenhaus
  /// chains start at D_1 and may repeat terms.
  std::vector<Subgroup> terms;
  std::vector<int> graded_dims;
};

/// N* = agemo(N) [G, N] for a normal subgroup N.
Subgroup relative_frattini(const Subgroup& n);
/// agemo(G) [G, G], which is P_1(G) = D_2(G).
Subgroup frattini(GroupPtr g);
/// Minimal number of generators, log_p |G / Fr(G)|.
int generator_rank(GroupPtr g);

FiltrationChain lower_p_central_chain(GroupPtr g);
int p_class(GroupPtr g);
/// P_j(G), trivial for j >= p-class.
Subgroup lower_p_central_term(GroupPtr g, int j);

/// D_1 = G, D_i = agemo(D_ceil(i/p)) * prod_{j+k=i} [D_j, D_k], memoized.
class ZassenhausSeries {
 public:
  explicit ZassenhausSeries(GroupPtr g);
  const Subgroup& term(int i);
  const GroupPtr& group() const { return g_; }

 private:
  GroupPtr g_;
  std::vector<Subgroup> d_;  // d_[i] = D_i, index 0 unused
};

FiltrationChain zassenhaus_chain(GroupPtr g);
Subgroup zassenhaus_term(GroupPtr g, int i);

struct InclusionStep {
  std::string larger, smaller;
  bool equal = false;     // larger == smaller
  bool contains = false;  // larger contains smaller
};

struct InclusionReport {
  Subgroup d2, p1, d3, p2, d4, p3;
  /// D2 vs P1, then D2 > D3 > P2 > D4 > P3.
  std::vector<InclusionStep> steps;
  bool d2_equals_p1 = false;
  bool chain_holds = false;
  bool all_proper = false;
};

InclusionReport inclusion_chain_report(GroupPtr g);

}  // namespace schur
