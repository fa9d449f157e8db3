#include "schur/invariants.hpp"

#include <algorithm>

#include "schur/filtrations.hpp"
#include "schur/linalg.hpp"

namespace schur {

std::vector<long long> abelian_invariants(const Subgroup& h) {
  const PcGroup& g = h.group();
  const int p = g.prime();
  const Subgroup derived = commutator_subgroup(h, h);
  // s[k] = log_p |agemo_k(H) H'|; in the abelian quotient these are the
  // subgroups generated by p^k-th powers of generators.
  std::vector<int> s{h.size_log()};
  std::vector<Element> pw = h.canonical_gens();
  while (s.back() > derived.size_log()) {
    for (auto& x : pw) x = g.pow(x, p);
    SubgroupBuilder b(derived);
    b.add_all(pw);
    s.push_back(b.size_log());
  }
  std::vector<long long> inv;
  long long q = 1;
  for (std::size_t k = 1; k < s.size(); ++k) {
    q *= p;
    const int at_least_k = s[k - 1] - s[k];
    const int at_least_k1 = k + 1 < s.size() ? s[k] - s[k + 1] : 0;
    for (int t = 0; t < at_least_k - at_least_k1; ++t) inv.push_back(q);
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::vector<long long> abelian_invariants(GroupPtr g) { return abelian_invariants(Subgroup::whole(std::move(g))); }

std::string format_invariants(const std::vector<long long>& inv) {
  std::string s = "[";
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(inv[i]);
  }
  return s + "]";
}

IPAD ipad(GroupPtr g) {
  const Subgroup whole = Subgroup::whole(g);
  const Subgroup phi = frattini(g);
  const SectionCoords sc(whole, phi);
  const int p = g->prime();
  if (sc.dim() != 2) throw Error("IPAD needs a 2-generated group");
  IPAD r;
  r.top = abelian_invariants(whole);
  // hyperplanes of F_p^2 are kernels of (1, a) and (0, 1)
  std::vector<std::pair<int, int>> functionals{{0, 1}};
  for (int a = 0; a < p; ++a) functionals.emplace_back(1, a);
  for (auto [u, v] : functionals) {
    const Subgroup m = kernel_of_functional(whole, [&](const Element& x) {
      const auto c = sc.coords(x);
      return (u * c[0] + v * c[1]) % p;
    });
    r.subquotients.push_back(abelian_invariants(m));
  }
  std::sort(r.subquotients.begin(), r.subquotients.end());
  return r;
}

std::string format_ipad(const IPAD& x) {
  std::string s = format_invariants(x.top) + ";";
  for (std::size_t i = 0; i < x.subquotients.size();) {
    std::size_t j = i;
    while (j < x.subquotients.size() && x.subquotients[j] == x.subquotients[i]) ++j;
    s += (i ? ", " : " ") + format_invariants(x.subquotients[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

std::vector<long long> element_order_counts(const PcGroup& g) {
  const int n = g.ngens();
  const int p = g.prime();
  std::vector<long long> counts;
  Element x;
  while (true) {
    const int k = g.order_log(x);
    if (static_cast<int>(counts.size()) <= k) counts.resize(static_cast<std::size_t>(k + 1), 0);
    ++counts[static_cast<std::size_t>(k)];
    int i = n - 1;
    while (i >= 0 && x[i] == p - 1) x[i--] = 0;
    if (i < 0) break;
    ++x[i];
  }
  return counts;
}

GroupInvariants group_invariants(GroupPtr g, int enumerate_max_log) {
  GroupInvariants r;
  r.prime = g->prime();
  r.order_log = g->ngens();
  const Subgroup whole = Subgroup::whole(g);
  r.abelian = abelian_invariants(whole);
  r.zassenhaus_dims = zassenhaus_chain(g).graded_dims;
  r.p_central_dims = lower_p_central_chain(g).graded_dims;
  r.derived_log = commutator_subgroup(whole, whole).size_log();
  r.centre_log = centre(g).size_log();
  if (g->ngens() <= enumerate_max_log) r.order_counts = element_order_counts(*g);
  return r;
}

}  // namespace schur
