// Involutions acting as -1 on the Frattini quotient, sigma-automorphisms and
// powerfulness tests.
#pragma once

#include <optional>

#include "schur/homomorphism.hpp"
#include "schur/recipes.hpp"
#include "schur/subgroup.hpp"

namespace schur {

struct SigmaWitness {
  GroupPtr group;
  GroupMap sigma;
};

/// An automorphism of order 2 acting as -1 on G/Fr(G), if one exists.  Found
/// by lifting along the p-central series with the Frattini action pinned.
std::optional<SigmaWitness> is_sigma_group(GroupPtr g);

/// sigma is an automorphism, sigma^2 = id and sigma(x) x lies in Fr(G) for
/// every polycyclic generator x.
bool verify_sigma_witness(const SigmaWitness& w);

/// Power of an automorphism of order 2 p^k with order exactly 2.
GroupMap involutory_power(const GroupMap& a);

/// |Aut_sigma(G)|, the centralizer of sigma in Aut(G).
unsigned long long sigma_automorphism_count(const SigmaWitness& w, int threads = 1);

/// agemo(G) = Fr(G).
bool is_powerful(GroupPtr g);
/// The same test for a normal subgroup H, with agemo and Frattini taken in H.
bool is_powerful(const Subgroup& h);

/// E_1(Q) = E_2(Q) for the recipes Fr(E) and agemo(E)[G, Fr(E)], where Q is
/// G/E_2(G) or G itself.
bool powerful_via_criterion(GroupPtr q, const SubgroupRecipe& e);

}  // namespace schur
