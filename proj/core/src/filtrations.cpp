#include "schur/filtrations.hpp"

namespace schur {

Subgroup relative_frattini(const Subgroup& n) {
  if (!n.is_normal()) throw Error("relative Frattini needs a normal subgroup");
  return product(agemo(n, 1), commutator_subgroup(Subgroup::whole(n.owner()), n));
}

Subgroup frattini(GroupPtr g) { return relative_frattini(Subgroup::whole(std::move(g))); }

int generator_rank(GroupPtr g) {
  const int n = g->ngens();
  return n - frattini(std::move(g)).size_log();
}

FiltrationChain lower_p_central_chain(GroupPtr g) {
  FiltrationChain c;
  c.kind = FiltrationKind::lower_p_central;
  c.terms.push_back(Subgroup::whole(g));
  while (!c.terms.back().is_trivial()) {
    c.terms.push_back(relative_frattini(c.terms.back()));
    if (c.terms.back().size_log() == c.terms[c.terms.size() - 2].size_log()) {
      throw Error("lower p-central series does not descend");
    }
  }
  for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
    c.graded_dims.push_back(c.terms[i].size_log() - c.terms[i + 1].size_log());
  }
  return c;
}

int p_class(GroupPtr g) { return static_cast<int>(lower_p_central_chain(std::move(g)).terms.size()) - 1; }

Subgroup lower_p_central_term(GroupPtr g, int j) {
  Subgroup t = Subgroup::whole(g);
  for (int i = 0; i < j && !t.is_trivial(); ++i) t = relative_frattini(t);
  return t;
}

ZassenhausSeries::ZassenhausSeries(GroupPtr g) : g_(std::move(g)) {
  d_.emplace_back(g_);
  d_.push_back(Subgroup::whole(g_));
}

const Subgroup& ZassenhausSeries::term(int i) {
  if (i < 1) throw Error("Zassenhaus index starts at 1");
  while (static_cast<int>(d_.size()) <= i) {
    const int k = static_cast<int>(d_.size());
    if (d_.back().is_trivial()) {
      d_.push_back(d_.back());
      continue;
    }
    const int p = g_->prime();
    SubgroupBuilder b(agemo(d_[static_cast<std::size_t>((k + p - 1) / p)], 1));
    for (int j = 1; 2 * j <= k; ++j) {
      b.add_all(commutator_subgroup(d_[static_cast<std::size_t>(j)], d_[static_cast<std::size_t>(k - j)]).canonical_gens());
    }
    d_.push_back(b.build());
  }
  return d_[static_cast<std::size_t>(i)];
}

FiltrationChain zassenhaus_chain(GroupPtr g) {
  ZassenhausSeries z(g);
  FiltrationChain c;
  c.kind = FiltrationKind::zassenhaus;
  for (int i = 1;; ++i) {
    c.terms.push_back(z.term(i));
    if (c.terms.back().is_trivial()) break;
  }
  for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
    c.graded_dims.push_back(c.terms[i].size_log() - c.terms[i + 1].size_log());
  }
  return c;
}

Subgroup zassenhaus_term(GroupPtr g, int i) {
  ZassenhausSeries z(std::move(g));
  return z.term(i);
}

InclusionReport inclusion_chain_report(GroupPtr g) {
  InclusionReport r;
  ZassenhausSeries z(g);
  r.d2 = z.term(2);
  r.d3 = z.term(3);
  r.d4 = z.term(4);
  r.p1 = lower_p_central_term(g, 1);
  r.p2 = lower_p_central_term(g, 2);
  r.p3 = lower_p_central_term(g, 3);
  auto step = [](const char* a, const Subgroup& x, const char* b, const Subgroup& y) {
    InclusionStep s;
    s.larger = a;
    s.smaller = b;
    s.contains = x.contains(y);
    s.equal = s.contains && x.size_log() == y.size_log();
    return s;
  };
  r.steps.push_back(step("D2", r.d2, "P1", r.p1));
  r.steps.push_back(step("D2", r.d2, "D3", r.d3));
  r.steps.push_back(step("D3", r.d3, "P2", r.p2));
  r.steps.push_back(step("P2", r.p2, "D4", r.d4));
  r.steps.push_back(step("D4", r.d4, "P3", r.p3));
  r.d2_equals_p1 = r.steps[0].equal;
  r.chain_holds = r.d2_equals_p1;
  r.all_proper = r.d2_equals_p1;
  for (std::size_t i = 1; i < r.steps.size(); ++i) {
    r.chain_holds = r.chain_holds && r.steps[i].contains;
    r.all_proper = r.all_proper && r.steps[i].contains && !r.steps[i].equal;
  }
  return r;
}

}  // namespace schur
