#include <doctest.h>

#include "schur/automorphisms.hpp"
#include "schur/covers.hpp"
#include "schur/filtrations.hpp"
#include "schur/invariants.hpp"
#include "support/groups.hpp"
#include "support/oracles.hpp"

using namespace schur;

namespace {

void check_cover(const CoverData& cd) {
  CHECK(cd.cover->is_consistent());
  CHECK(cd.projection.is_valid());
  CHECK(cd.projection.kernel() == cd.multiplicator);
  CHECK(cd.projection.image().is_whole());
  for (const auto& m : cd.multiplicator.canonical_gens()) {
    CHECK(cd.cover->is_identity(cd.cover->pow(m, cd.cover->prime())));
    CHECK(centre(cd.cover).contains(m));
  }
  CHECK(cd.multiplicator.contains(cd.nucleus));
  CHECK(cd.cover->ngens() == cd.base->ngens() + cd.mu_rank);
  CHECK(oracle::is_isomorphic(*quotient(cd.multiplicator).group, *cd.base));
  CHECK(generator_rank(cd.cover) == generator_rank(cd.base));
}

/// Classes of d-generated groups of order p^n and p-class c, by brute force.
std::vector<PcGroup> brute_classes(int n, int d, int c) {
  std::vector<PcGroup> reps;
  std::vector<oracle::Table> tables;
  for (const auto& g : oracle::all_presentations(3, n)) {
    const auto t = oracle::Table::of(g);
    if (static_cast<int>(oracle::generating_set(t).size()) != d || oracle::p_class(t) != c) continue;
    bool seen = false;
    for (const auto& r : tables) seen = seen || oracle::is_isomorphic(t, r);
    if (!seen) {
      reps.push_back(g);
      tables.push_back(t);
    }
  }
  return reps;
}

}  // namespace

TEST_CASE("p-cover of C3 is C9") {
  const auto cd = p_cover(share(testgroups::c3()));
  check_cover(cd);
  CHECK(cd.mu_rank == 1);
  CHECK(cd.nu_rank == 1);
  CHECK(oracle::is_isomorphic(*cd.cover, testgroups::c9()));
}

TEST_CASE("p-cover of C3 x C3") {
  const auto cd = p_cover(share(testgroups::c3xc3()));
  check_cover(cd);
  CHECK(cd.cover->ngens() == 5);
  CHECK(cd.mu_rank == 3);
  CHECK(cd.nu_rank == 3);
  CHECK(p_class(cd.cover) == 2);
}

TEST_CASE("p-covers of the order-27 groups") {
  for (const auto& g : {testgroups::heisenberg(), testgroups::m27(), testgroups::c9()}) {
    const auto cd = p_cover(share(g));
    check_cover(cd);
    CHECK(cd.nu_rank <= cd.mu_rank);
  }
}

TEST_CASE("immediate descendants of C3 x C3 match brute force") {
  const auto base = share(testgroups::c3xc3());
  CHECK(immediate_descendants(base, 4).empty());
  CHECK_THROWS(immediate_descendants(base, 0));
  for (int step = 1; step <= 2; ++step) {
    const auto ds = immediate_descendants(base, step);
    const auto brute = brute_classes(2 + step, 2, 2);
    CHECK(ds.size() == brute.size());
    for (const auto& k : ds) {
      CHECK(k->ngens() == 2 + step);
      CHECK(p_class(k) == 2);
      int matches = 0;
      for (const auto& b : brute) matches += oracle::is_isomorphic(*k, b);
      CHECK(matches == 1);
    }
  }
  CHECK(immediate_descendants(base, 1).size() == 3);
}

TEST_CASE("dim_E_in_cover") {
  const auto cd = p_cover(share(testgroups::heisenberg()));
  CHECK(dim_E_in_cover(cd, SubgroupRecipe::p_central(3)) == 0);
  CHECK(dim_E_in_cover(cd, SubgroupRecipe::p_central(2)) == cd.nu_rank);
  CHECK_THROWS(dim_E_in_cover(cd, SubgroupRecipe::whole()));
}
