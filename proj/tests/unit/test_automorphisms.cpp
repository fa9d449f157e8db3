#include <doctest.h>

#include "schur/automorphisms.hpp"
#include "schur/filtrations.hpp"
#include "schur/presentation.hpp"
#include "support/groups.hpp"
#include "support/oracles.hpp"

using namespace schur;

TEST_CASE("to_pcentral gives an isomorphic p-central presentation") {
  for (const auto& g : {testgroups::c9(), testgroups::heisenberg(), testgroups::m27()}) {
    const auto gp = share(g);
    const auto s = to_pcentral(gp);
    CHECK(s.group->is_consistent());
    CHECK(s.group->validate_definitions());
    CHECK(s.to_input.is_valid());
    CHECK(s.from_input.is_valid());
    const auto round = s.to_input.compose(s.from_input);
    for (int i = 0; i < g.ngens(); ++i) CHECK(round.apply(g.generator(i)) == g.generator(i));
    CHECK(oracle::is_isomorphic(*s.group, g));
  }
}

TEST_CASE("automorphism counts of small groups") {
  CHECK(automorphism_count(share(testgroups::c3())) == 2);
  CHECK(automorphism_count(share(testgroups::c3xc3())) == 48);
  CHECK(automorphism_count(share(testgroups::c9())) == 6);
  CHECK(automorphism_count(share(testgroups::heisenberg())) == 432);
  CHECK(automorphism_count(share(testgroups::m27())) == oracle::automorphism_count(testgroups::m27()));
}

TEST_CASE("automorphisms_with returns verified maps") {
  const auto g = share(testgroups::heisenberg());
  const auto all = automorphisms_with(g, {});
  CHECK(all.size() == 432);
  for (const auto& a : all) CHECK(a.is_valid());
  const auto neg = automorphisms_with(g, [](const linalg::Matrix& m) {
    return m(0, 0) == 2 && m(0, 1) == 0 && m(1, 0) == 0 && m(1, 1) == 2;
  });
  CHECK(neg.size() == 9);
}

// Automorphism counts at order 81 are compared in the acceptance suite.
TEST_CASE("isomorphism test agrees with the brute-force oracle on orders up to 81") {
  for (int n = 1; n <= 4; ++n) {
    const auto pres = oracle::all_presentations(3, n);
    std::vector<PcGroup> reps;
    std::vector<oracle::Table> rep_tables;
    std::vector<std::vector<int>> rep_sigs;
    std::vector<std::size_t> class_of;
    for (const auto& g : pres) {
      const auto t = oracle::Table::of(g);
      const auto sig = oracle::signature(t);
      std::size_t found = reps.size();
      for (std::size_t r = 0; r < reps.size() && found == reps.size(); ++r) {
        if (rep_sigs[r] == sig && oracle::count_isomorphisms(t, rep_tables[r], true) > 0) found = r;
      }
      if (found == reps.size()) {
        reps.push_back(g);
        rep_tables.push_back(t);
        rep_sigs.push_back(sig);
      }
      class_of.push_back(found);
    }
    const std::size_t expected[] = {0, 1, 2, 5, 15};
    CHECK(reps.size() == expected[n]);
    for (std::size_t a = 0; a < reps.size(); ++a) {
      for (std::size_t b = 0; b < reps.size(); ++b) {
        CHECK(is_isomorphic(share(reps[a]), share(reps[b])) == (a == b));
      }
      if (n <= 3) CHECK(automorphism_count(share(reps[a])) == oracle::automorphism_count(reps[a]));
    }
    // a sample of all presentations against every representative
    for (std::size_t k = 0; k < pres.size(); k += 17) {
      for (std::size_t b = 0; b < reps.size(); ++b) {
        CHECK(is_isomorphic(share(pres[k]), share(reps[b])) == (class_of[k] == b));
      }
    }
  }
}
