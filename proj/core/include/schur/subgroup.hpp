// Subgroups of a PcGroup via induced polycyclic generating sequences.
#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "schur/pcgroup.hpp"

namespace schur {

/// A subgroup with a canonical generating sequence: one element per pivot
/// depth, leading exponent 1 and zero exponent at every other pivot depth.
/// Two handles describe the same subgroup iff their canonical sequences match.
class Subgroup {
 public:
  Subgroup() = default;
  /// Trivial subgroup.
  explicit Subgroup(GroupPtr owner);
  Subgroup(GroupPtr owner, std::span<const Element> gens);

  static Subgroup whole(GroupPtr owner);

  const GroupPtr& owner() const { return owner_; }
  const PcGroup& group() const { return *owner_; }
  const std::vector<Element>& generators() const { return generators_; }
  /// Canonical sequence, ordered by depth.
  const std::vector<Element>& canonical_gens() const { return canon_; }
  const std::vector<int>& depths() const { return depths_; }
  /// log_p of the order.
  int size_log() const { return static_cast<int>(canon_.size()); }
  bool is_trivial() const { return canon_.empty(); }
  bool is_whole() const { return owner_ && size_log() == owner_->ngens(); }

  /// Has a canonical element at this depth.
  bool has_depth(int d) const { return slot_[static_cast<std::size_t>(d)] >= 0; }
  const Element& at_depth(int d) const { return canon_[static_cast<std::size_t>(slot_[static_cast<std::size_t>(d)])]; }

  /// Strip x by left multiplication with canonical elements; the result is
  /// the identity iff x is in the subgroup.
  Element sift(Element x) const;
  bool contains(const Element& x) const;
  bool contains(const Subgroup& other) const;

  bool is_normal() const;
  /// Normal in the subgroup generated by `by`.
  bool is_normalized_by(std::span<const Element> by) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.owner_ == b.owner_ && a.canon_ == b.canon_;
  }

 private:
  friend class SubgroupBuilder;
  void finish();

  GroupPtr owner_;
  std::vector<Element> generators_;
  std::vector<Element> canon_;
  std::vector<int> depths_;
  std::array<int, kMaxGens> slot_{};
};

/// Incremental closure engine used by all subgroup constructions.
class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(GroupPtr owner);
  explicit SubgroupBuilder(const Subgroup& start);

  /// Add an element and close under powers and commutators.  Returns true if
  /// the subgroup grew.
  bool add(const Element& x);
  void add_all(std::span<const Element> xs);
  /// Repeatedly conjugate by `by` until closed.
  void close_under_conjugation(std::span<const Element> by);
  bool contains(const Element& x) const;
  int size_log() const { return static_cast<int>(count_); }
  std::vector<Element> elements() const;

  Subgroup build() const;

 private:
  Element reduce(Element x) const;

  GroupPtr owner_;
  std::array<Element, kMaxGens> table_{};
  std::array<bool, kMaxGens> has_{};
  std::size_t count_ = 0;
  std::vector<Element> generators_;
};

/// Generators that generate the owner as a group: the weight-1 generators
/// when definitions are known, otherwise all polycyclic generators.
std::vector<Element> group_generators(const PcGroup& g);

Subgroup subgroup(GroupPtr g, std::span<const Element> gens);
Subgroup normal_closure(GroupPtr g, std::span<const Element> gens);
Subgroup normal_closure(const Subgroup& h);
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
/// Normal closure in the owner of the p^i-th powers of the elements of h.
Subgroup agemo(const Subgroup& h, int i = 1);
/// Product of two normal subgroups, or of a subgroup and a normal subgroup.
Subgroup product(const Subgroup& a, const Subgroup& b);
Subgroup centre(GroupPtr g);
/// Elements of h commuting with every element of xs.
Subgroup centralizer(const Subgroup& h, std::span<const Element> xs);
/// Kernel of a homomorphism from h onto a subgroup of F_p, given by its
/// values on elements.
Subgroup kernel_of_functional(const Subgroup& h, const std::function<int(const Element&)>& f);

/// Coordinates of elements of N modulo a normal subgroup M <= N, with respect
/// to the canonical elements of N at the depths not occupied by M.  N/M must
/// be elementary abelian for `coords` to be additive.
class SectionCoords {
 public:
  SectionCoords(const Subgroup& n, const Subgroup& m);
  int dim() const { return static_cast<int>(basis_depths_.size()); }
  /// x must lie in N.
  std::vector<int> coords(const Element& x) const;
  /// Product of basis elements with the given exponents.
  Element element(std::span<const int> v) const;
  const std::vector<int>& basis_depths() const { return basis_depths_; }
  const Subgroup& top() const { return n_; }
  const Subgroup& bottom() const { return m_; }

 private:
  Subgroup n_, m_;
  std::vector<int> basis_depths_;
  std::array<int, kMaxGens> index_{};
};

}  // namespace schur
