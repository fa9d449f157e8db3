#include "schur/sigma.hpp"

#include "schur/automorphisms.hpp"
#include "schur/filtrations.hpp"
#include "schur/presentation.hpp"

namespace schur {

namespace {

bool is_identity_map(const GroupMap& a) {
  for (int i = 0; i < a.source->ngens(); ++i) {
    if (a.images[static_cast<std::size_t>(i)] != a.source->generator(i)) return false;
  }
  return true;
}

}  // namespace

GroupMap involutory_power(const GroupMap& a) {
  GroupMap b = a;
  for (int guard = 0; guard < 64; ++guard) {
    if (is_identity_map(b.compose(b))) return b;
    b = b.compose(b).compose(b);
  }
  throw Error("automorphism order is not of the form 2 p^k");
}

std::optional<SigmaWitness> is_sigma_group(GroupPtr g) {
  const Standardized s = ensure_pcentral(g);
  const int p = g->prime();
  LiftOptions opt;
  opt.matrix_filter = [p](const linalg::Matrix& m) {
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols; ++j) {
        if (m(i, j) != (i == j ? p - 1 : 0)) return false;
      }
    }
    return true;
  };
  const auto img = LiftSearch(s.group, s.group).find_one(opt);
  if (!img) return std::nullopt;
  const GroupMap alpha{s.group, s.group, *img};
  const GroupMap sigma = involutory_power(s.from_input.compose(alpha).compose(s.to_input));
  return SigmaWitness{g, sigma};
}

bool verify_sigma_witness(const SigmaWitness& w) {
  const GroupMap& s = w.sigma;
  if (s.source != w.group || s.target != w.group || !s.is_valid()) return false;
  if (!s.image().is_whole() || !is_identity_map(s.compose(s))) return false;
  const Subgroup fr = frattini(w.group);
  const PcGroup& g = *w.group;
  for (int i = 0; i < g.ngens(); ++i) {
    if (!fr.contains(g.mul(s.images[static_cast<std::size_t>(i)], g.generator(i)))) return false;
  }
  return true;
}

unsigned long long sigma_automorphism_count(const SigmaWitness& w, int threads) {
  const Standardized s = ensure_pcentral(w.group);
  const GroupMap sig = s.to_input.compose(w.sigma).compose(s.from_input);
  const PcGroup& g = *s.group;
  const int d = g.rank();
  LiftOptions opt;
  opt.threads = threads;
  opt.constraint = [&](const std::vector<Element>& img) {
    const GroupMap alpha{s.group, s.group, img};
    std::vector<Element> out;
    for (int i = 0; i < d; ++i) {
      const Element x = g.generator(i);
      out.push_back(g.mul(g.inv(alpha.apply(sig.apply(x))), sig.apply(alpha.apply(x))));
    }
    return out;
  };
  return LiftSearch(s.group, s.group).count(opt);
}

bool is_powerful(GroupPtr g) { return agemo(Subgroup::whole(g)) == frattini(g); }

bool is_powerful(const Subgroup& h) {
  const Subgroup a = agemo(h);
  return a.contains(commutator_subgroup(h, h));
}

bool powerful_via_criterion(GroupPtr q, const SubgroupRecipe& e) {
  return SubgroupRecipe::frattini(e).evaluate(q) == SubgroupRecipe::e2(e).evaluate(q);
}

}  // namespace schur
