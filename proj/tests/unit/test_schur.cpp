#include <doctest.h>

#include "schur/automorphisms.hpp"
#include "schur/catalog.hpp"
#include "schur/covers.hpp"
#include "schur/filtrations.hpp"
#include "schur/schur_quotients.hpp"
#include "schur/sigma.hpp"
#include "support/groups.hpp"
#include "support/oracles.hpp"

using namespace schur;

namespace {

const Catalog& catalog() {
  static const Catalog cat = [] {
    Catalog c = build_catalog({.compute_aut = false});
    assign_aliases(c, load_alias_table(default_alias_path()));
    return c;
  }();
  return cat;
}

/// One presentation per isomorphism class of order 3^n.
const std::vector<GroupPtr>& classes(int n) {
  static std::map<int, std::vector<GroupPtr>> cache;
  auto& out = cache[n];
  if (!out.empty()) return out;
  std::vector<oracle::Table> tables;
  for (auto& g : oracle::all_presentations(3, n)) {
    auto t = oracle::Table::of(g);
    bool seen = false;
    for (const auto& r : tables) seen = seen || oracle::is_isomorphic(t, r);
    if (!seen) {
      out.push_back(share(std::move(g)));
      tables.push_back(std::move(t));
    }
  }
  return out;
}

bool powerful_oracle(const oracle::Table& t) {
  std::vector<int> powers, comms;
  for (int x = 0; x < t.order; ++x) {
    powers.push_back(t.power(x, t.p));
    for (int y = 0; y < t.order; ++y) comms.push_back(t.comm(x, y));
  }
  const auto a = t.closure(powers);
  for (int c : comms) {
    if (!std::binary_search(a.begin(), a.end(), c)) return false;
  }
  return true;
}

GroupPtr entry(const char* alias) {
  const auto* e = catalog().find(alias);
  REQUIRE(e != nullptr);
  return e->group;
}

}  // namespace

TEST_CASE("isomorphism class counts of small 3-groups") {
  CHECK(classes(2).size() == 2);
  CHECK(classes(3).size() == 5);
  CHECK(classes(4).size() == 15);
}

TEST_CASE("sigma search agrees with brute force") {
  int without = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : classes(n)) {
      if (generator_rank(g) != 2) continue;
      const auto facts = oracle::sigma_facts(oracle::Table::of(*g));
      const auto w = is_sigma_group(g);
      CHECK(w.has_value() == facts.exists);
      if (!w) {
        ++without;
        continue;
      }
      CHECK(verify_sigma_witness(*w));
      CHECK(sigma_automorphism_count(*w) == facts.centralizer);
    }
  }
  CHECK(without > 0);
}

TEST_CASE("witness checks reject non-involutions") {
  const auto g = share(testgroups::c3xc3());
  auto w = is_sigma_group(g);
  REQUIRE(w);
  SigmaWitness bad = *w;
  bad.sigma.images[0] = g->generator(0);
  CHECK_FALSE(verify_sigma_witness(bad));
}

TEST_CASE("powerful groups") {
  CHECK_FALSE(is_powerful(share(testgroups::heisenberg())));
  CHECK(is_powerful(share(testgroups::m27())));
  CHECK(is_powerful(share(testgroups::c3xc3())));
  CHECK(is_powerful(share(testgroups::c9())));
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : classes(n)) {
      const bool expected = powerful_oracle(oracle::Table::of(*g));
      CHECK(is_powerful(g) == expected);
      CHECK(is_powerful(Subgroup::whole(g)) == expected);
    }
  }
}

TEST_CASE("powerfulness criterion matches the direct test") {
  const std::vector<SubgroupRecipe> recipes = {SubgroupRecipe::whole(), parse_recipe("D2"), parse_recipe("P1"),
                                               parse_recipe("D3")};
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : classes(n)) {
      for (const auto& e : recipes) {
        const bool direct = is_powerful(e.evaluate(g));
        CHECK(powerful_via_criterion(g, e) == direct);
        const auto q = quotient(SubgroupRecipe::e2(e).evaluate(g)).group;
        CHECK(powerful_via_criterion(q, e) == direct);
        ++checked;
      }
    }
  }
  CHECK(checked == 4 * 22);
}

TEST_CASE("free p-class quotients") {
  // Witt: layer dims 2, 3, 5, 8 for two generators at odd p
  CHECK(free_p_class_quotient(3, 2, 1)->ngens() == 2);
  CHECK(free_p_class_quotient(3, 2, 2)->ngens() == 5);
  CHECK(free_p_class_quotient(3, 2, 3)->ngens() == 10);
  CHECK(free_p_class_quotient(3, 2, 4)->ngens() == 18);
  CHECK(p_class(free_p_class_quotient(3, 2, 4)) == 4);
  CHECK(free_p_class_quotient(3, 2, 4)->is_consistent());
}

TEST_CASE("covers of catalog entries are consistent") {
  for (const auto& e : catalog().entries()) {
    const auto cd = p_cover(e.group);
    CHECK(cd.cover->is_consistent());
    CHECK(is_isomorphic(quotient(cd.multiplicator).group, e.group));
  }
}

TEST_CASE("relation ranks") {
  const auto d4 = SubgroupRecipe::zassenhaus(4);
  CHECK(rel_rank(free_d4_quotient().group, d4) == 0);
  CHECK(rel_rank(share(testgroups::c3xc3()), parse_recipe("D2")) == 0);
  CHECK_THROWS_AS(rel_rank(share(testgroups::c9()), parse_recipe("D2")), Error);
  for (const auto& e : catalog().entries()) {
    const int expected = e.order == 243 ? 2 : e.order == 729 ? 1 : 0;
    const auto info = rel_rank_info(e.group, d4);
    CHECK(info.rank == expected);
    // the cover gives the same number: mu = r_E + dim E(K^*)
    const auto cd = p_cover(e.group);
    CHECK(cd.mu_rank - dim_E_in_cover(cd, d4) == expected);
  }
}

TEST_CASE("relation rank from the cover matches free quotients") {
  const auto e = parse_recipe("P3*E2(D2)");
  for (const char* alias : {"[243,5]", "[243,13]"}) {
    const auto init = schur_step(entry(alias), SubgroupRecipe::p_central(3), SubgroupRecipe::zassenhaus(4));
    for (const auto& k : init.groups) {
      const auto h = quotient(SubgroupRecipe::e2(parse_recipe("D2")).evaluate(k)).group;
      const auto info = rel_rank_info(h, e);
      REQUIRE_FALSE(info.via_cover);
      const auto cd = p_cover(h);
      CHECK(cd.mu_rank - dim_E_in_cover(cd, e) == info.rank);
    }
  }
}

TEST_CASE("Schur step outputs") {
  const auto d4 = SubgroupRecipe::zassenhaus(4);
  const auto p3 = SubgroupRecipe::p_central(3);
  for (const char* alias : {"[243,2]", "[243,13]", "[243,5]"}) {
    const auto h = entry(alias);
    const auto st = schur_step(h, p3, d4);
    REQUIRE_FALSE(st.groups.empty());
    CHECK(st.step == st.mu - 2 - st.dim_e_in_cover);
    for (const auto& k : st.groups) {
      CHECK(p3.evaluate(k).is_trivial());
      CHECK(is_isomorphic(quotient(d4.evaluate(k)).group, h));
      CHECK(rel_rank(k, p3) == 2);
      CHECK(is_sigma_group(k).has_value());
      CHECK(k->ngens() == h->ngens() + st.step);
    }
    const auto all = schur_step(h, p3, d4, {.odd_subspaces_only = false});
    CHECK(all.candidates >= st.candidates);
    REQUIRE(all.groups.size() == st.groups.size());
    for (const auto& k : all.groups) {
      bool found = false;
      for (const auto& k2 : st.groups) found = found || is_isomorphic(k, k2);
      CHECK(found);
    }
  }
  CHECK_THROWS_AS(schur_step(free_d4_quotient().group, p3, d4), Error);
}

TEST_CASE("powerfulness recursion on fast cases") {
  const auto d2 = parse_recipe("D2");
  for (const char* alias : {"[243,5]", "[243,17]", "[243,2]"}) {
    const auto r = powerfulness_recursion(entry(alias), d2);
    CHECK(r.verdict == Verdict::all_powerful);
    CHECK(r.max_rank <= 3);
    CHECK(r.negative == 0);
    CHECK(r.unresolved == 0);
  }
  auto r = powerfulness_recursion(entry("[243,5]"), d2);
  r.type = "[243,5]";
  CHECK(report_json(r) ==
        R"({"type":"[243,5]","E":"D2","verdict":"all_powerful","max_rank":3,"levels_explored":3,)"
        R"("groups_examined":2,"positive":1,"negative":0,"unresolved":0})");
  const auto capped = powerfulness_recursion(entry("[243,2]"), d2, {.max_class = 3});
  CHECK(capped.verdict == Verdict::inconclusive);
  CHECK(verdict_name(Verdict::never_powerful) == "never_powerful");
}
