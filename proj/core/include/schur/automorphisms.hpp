// Automorphisms and isomorphisms by lifting generator images along the lower
// p-central series of the target, one layer at a time.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "schur/homomorphism.hpp"
#include "schur/linalg.hpp"
#include "schur/subgroup.hpp"

namespace schur {

struct LiftOptions {
  /// Filter on the induced map of Frattini quotients.  Row i holds the
  /// coordinates of the image of the i-th weight-1 source generator.
  std::function<bool(const linalg::Matrix&)> matrix_filter;
  /// Elements that must vanish, computed from the images of all source pc
  /// generators.  They must behave like commutation with a fixed map: once
  /// they lie in Q_j for images fixed modulo Q_j, their class modulo Q_{j+1}
  /// is affine in the next lift.
  std::function<std::vector<Element>(const std::vector<Element>& images)> constraint;
  int threads = 1;
};

class LiftSearch {
 public:
  /// `source` must carry a p-central presentation with definitions.
  LiftSearch(GroupPtr source, GroupPtr target);

  /// Equal p-central layer dimensions; a prerequisite for isomorphisms.
  bool compatible() const { return compatible_; }

  /// Number of isomorphisms source -> target passing the options.
  unsigned long long count(const LiftOptions& opt = {}) const;
  /// Visit every isomorphism (images of all source pc generators) in a
  /// deterministic order; return false to stop.
  void for_each(const LiftOptions& opt, const std::function<bool(const std::vector<Element>&)>& visit) const;
  std::optional<std::vector<Element>> find_one(const LiftOptions& opt = {}) const;

 private:
  struct Relation {
    bool power;
    int i, j;
    int weight;
  };
  struct Node;

  std::vector<Element> full_images(const std::vector<Element>& b) const;
  Element defect(const Relation& r, const std::vector<Element>& img) const;
  void run(const LiftOptions& opt, bool counting, const std::function<bool(const std::vector<Element>&)>* visit,
           unsigned long long* total) const;
  bool descend(int level, std::vector<Element>& b, const LiftOptions& opt, bool counting,
               const std::function<bool(const std::vector<Element>&)>* visit, unsigned long long& total) const;

  GroupPtr source_, target_;
  int d_ = 0;
  int classes_ = 0;
  bool compatible_ = false;
  std::vector<Subgroup> q_;         // target lower p-central series
  std::vector<SectionCoords> sec_;  // q_[j] / q_[j+1]
  std::vector<Relation> relations_;
};

/// Default order bound for automorphism computations, as log_p |G|.
inline constexpr int kAutOrderBound = 10;

unsigned long long automorphism_count(GroupPtr g, int max_log = kAutOrderBound, int threads = 1);

/// Automorphisms of g whose action on G/Fr(G), written in the basis of the
/// standardized weight-1 generators, passes the filter.
std::vector<GroupMap> automorphisms_with(GroupPtr g, const std::function<bool(const linalg::Matrix&)>& filter,
                                         int max_log = kAutOrderBound);

std::optional<GroupMap> find_isomorphism(GroupPtr a, GroupPtr b);
/// The lifting search alone, without the invariant prescreen.
std::optional<GroupMap> search_isomorphism(GroupPtr a, GroupPtr b);
bool is_isomorphic(GroupPtr a, GroupPtr b);

}  // namespace schur
