// Characteristic subgroups given by a construction that can be evaluated in
// any finite quotient of the free pro-p group.
#pragma once

#include <memory>
#include <string>

#include "schur/subgroup.hpp"

namespace schur {

class SubgroupRecipe {
 public:
  enum class Op { whole, zassenhaus, p_central, agemo, commutator, product, frattini, relative_frattini, e2 };

  static SubgroupRecipe whole();
  /// D_i
  static SubgroupRecipe zassenhaus(int i);
  /// P_j, with P_0 the whole group.
  static SubgroupRecipe p_central(int j);
  static SubgroupRecipe agemo(const SubgroupRecipe& r);
  static SubgroupRecipe commutator(const SubgroupRecipe& a, const SubgroupRecipe& b);
  static SubgroupRecipe product(const SubgroupRecipe& a, const SubgroupRecipe& b);
  /// Fr(E) = agemo(E)[E,E]; this is E_1.
  static SubgroupRecipe frattini(const SubgroupRecipe& e);
  /// E* = agemo(E)[G,E].
  static SubgroupRecipe star(const SubgroupRecipe& e);
  /// E_2 = agemo(E)[G, Fr(E)].
  static SubgroupRecipe e2(const SubgroupRecipe& e);

  Op op() const { return node_->op; }
  int index() const { return node_->index; }
  std::string name() const;

  Subgroup evaluate(GroupPtr g) const;

 private:
  struct Node {
    Op op = Op::whole;
    int index = 0;
    std::shared_ptr<const Node> a, b;
  };
  explicit SubgroupRecipe(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend class RecipeEvaluator;
};

/// Parse "D2", "P3", "G", and products such as "P3*E2(D2)".
SubgroupRecipe parse_recipe(const std::string& text);

}  // namespace schur
