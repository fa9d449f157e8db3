#include "schur/schur_quotients.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "schur/automorphisms.hpp"
#include "schur/filtrations.hpp"
#include "schur/presentation.hpp"
#include "schur/sigma.hpp"

namespace schur {

namespace {

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      err = std::current_exception();
    }
  };
  if (threads <= 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

int rank_in_free_quotient(GroupPtr k, const SubgroupRecipe& e, int n, int depth) {
  const GroupPtr q = free_p_class_quotient(k->prime(), n, depth);
  const Standardized ks = ensure_pcentral(k);
  std::vector<Element> imgs;
  for (int i = 0; i < n; ++i) imgs.push_back(ks.to_input.apply(ks.group->generator(i)));
  const GroupMap phi{q, k, extend_by_definitions(*q, *k, imgs)};
  if (!phi.is_valid()) throw Error("free quotient does not map onto K");
  const Subgroup nn = phi.kernel();
  const Subgroup eq = e.evaluate(q);
  if (!nn.contains(eq)) throw Error("E is not contained in the relation module");
  return nn.size_log() - product(eq, relative_frattini(nn)).size_log();
}

/// Lifts automorphisms of the base of a p-cover to the cover.
class CoverLifter {
 public:
  explicit CoverLifter(const CoverData& cd)
      : cd_(cd), base_(ensure_pcentral(cd.base)), cov_(ensure_pcentral(cd.cover)) {}

  Element preimage(const Element& y) const {
    const Element e = base_.from_input.apply(y);
    Element x;
    for (int k = 0; k < base_.group->ngens(); ++k) x[k] = e[k];
    if (cd_.projection.apply(x) != y) throw Error("cover preimage failed");
    return x;
  }

  GroupMap lift(const GroupMap& beta) const {
    const PcGroup& s = *cov_.group;
    std::vector<Element> img;
    for (int i = 0; i < s.rank(); ++i) {
      const Element x = cov_.to_input.apply(s.generator(i));
      img.push_back(cov_.from_input.apply(preimage(beta.apply(cd_.projection.apply(x)))));
    }
    const GroupMap t{cov_.group, cov_.group, extend_by_definitions(s, s, img)};
    GroupMap out = cov_.from_input.compose(t).compose(cov_.to_input);
    if (!out.is_valid()) throw Error("lifted map is not a homomorphism");
    return out;
  }

 private:
  const CoverData& cd_;
  Standardized base_, cov_;
};

}  // namespace

GroupPtr free_p_class_quotient(int p, int n, int c) {
  static std::recursive_mutex mu;
  static std::map<std::tuple<int, int, int>, GroupPtr> cache;
  if (c < 1) throw Error("free quotient depth must be positive");
  std::lock_guard<std::recursive_mutex> lk(mu);
  const auto key = std::make_tuple(p, n, c);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  GroupPtr g;
  if (c == 1) {
    g = share(PcGroup(p, n, std::vector<Element>(static_cast<std::size_t>(n)),
                      std::vector<Element>(static_cast<std::size_t>(n * n))));
  } else {
    g = p_cover(free_p_class_quotient(p, n, c - 1), n).cover;
  }
  g = ensure_pcentral(g).group;
  cache[key] = g;
  return g;
}

RelRankInfo rel_rank_info(GroupPtr k, const SubgroupRecipe& e) {
  if (!e.evaluate(k).is_trivial()) throw Error("rel_rank: " + e.name() + "(K) is not trivial");
  RelRankInfo info;
  const int n = generator_rank(k);
  if (n == 0) return info;
  const int c = p_class(k);
  std::vector<int> ranks;
  for (int depth = c + 1; depth <= kFreeQuotientDepth; ++depth) {
    try {
      ranks.push_back(rank_in_free_quotient(k, e, n, depth));
      info.depths.push_back(depth);
    } catch (const Error&) {
      if (ranks.empty()) throw;
      break;
    }
  }
  if (ranks.empty()) {
    const CoverData cd = p_cover(k, n);
    info.via_cover = true;
    info.rank = cd.mu_rank - dim_E_in_cover(cd, e, true);
    return info;
  }
  for (int r : ranks) {
    if (r != ranks.front()) throw Error("relation rank did not stabilize across depths");
  }
  info.rank = ranks.front();
  return info;
}

int rel_rank(GroupPtr k, const SubgroupRecipe& e) { return rel_rank_info(std::move(k), e).rank; }

bool star_contained(int p, int n, const SubgroupRecipe& d, const SubgroupRecipe& e) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::string, std::string>, bool> cache;
  const auto key = std::make_tuple(p, n, d.name(), e.name());
  {
    std::lock_guard<std::mutex> lk(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const GroupPtr q = free_p_class_quotient(p, n, kFreeQuotientDepth);
  const bool ok = e.evaluate(q).contains(relative_frattini(d.evaluate(q)));
  std::lock_guard<std::mutex> lk(mu);
  cache[key] = ok;
  return ok;
}

StepResult schur_step(GroupPtr h, const SubgroupRecipe& e, const SubgroupRecipe& d, const StepOptions& opt) {
  const int p = h->prime();
  const int n = generator_rank(h);
  if (!d.evaluate(h).is_trivial()) throw Error("schur_step: " + d.name() + "(H) is not trivial");
  if (!star_contained(p, n, d, e)) throw Error("schur_step: " + d.name() + "* is not contained in " + e.name());
  if (rel_rank(h, d) != n) throw Error("schur_step: r_D(H) differs from d(H)");
  const auto sigma = is_sigma_group(h);
  if (!sigma) throw Error("schur_step: H has no sigma structure");

  const CoverData cd = p_cover(h, n);
  const Subgroup ev = e.evaluate(cd.cover);
  const Subgroup dv = d.evaluate(cd.cover);
  if (!dv.contains(ev)) throw Error("schur_step: " + e.name() + " is not contained in " + d.name());
  if (!cd.multiplicator.contains(dv)) throw Error("schur_step: " + d.name() + "(H*) is not in the multiplicator");

  StepResult res;
  res.mu = cd.mu_rank;
  res.dim_e_in_cover = ev.size_log();
  const SectionCoords sec(cd.multiplicator, ev);
  const int dim_v = sec.dim();
  res.step = dim_v - n;
  if (res.step < 0) throw Error("schur_step: negative step size");

  std::vector<linalg::Vec> dv_rows;
  for (const auto& x : dv.canonical_gens()) dv_rows.push_back(sec.coords(x));

  // Subspaces W of V = M / E(H*) of dimension n with W + D(H*) = V.
  std::vector<linalg::Matrix> subspaces;
  auto consider = [&](const linalg::Matrix& w) {
    std::vector<linalg::Vec> rows = dv_rows;
    for (int r = 0; r < w.rows; ++r) rows.push_back(w.row(r));
    if (linalg::rank(linalg::Matrix::from_rows(rows, dim_v), p) == dim_v) subspaces.push_back(w);
  };
  if (opt.odd_subspaces_only) {
    const CoverLifter lifter(cd);
    const GroupMap tau = involutory_power(lifter.lift(sigma->sigma));
    linalg::Matrix a(dim_v, dim_v);  // transpose of (T + I)
    for (int k = 0; k < dim_v; ++k) {
      std::vector<int> unit(static_cast<std::size_t>(dim_v), 0);
      unit[static_cast<std::size_t>(k)] = 1;
      const auto row = sec.coords(tau.apply(sec.element(unit)));
      for (int j = 0; j < dim_v; ++j) a(j, k) = linalg::mod(row[static_cast<std::size_t>(j)] + (j == k ? 1 : 0), p);
    }
    const auto odd = linalg::nullspace(a, p);
    const int k_odd = static_cast<int>(odd.size());
    if (k_odd >= n) {
      const linalg::Matrix basis = linalg::Matrix::from_rows(odd, dim_v);
      linalg::for_each_subspace(k_odd, n, p, [&](const linalg::Matrix& u) {
        consider(linalg::mul(u, basis, p));
        return true;
      });
    }
  } else {
    linalg::for_each_subspace(dim_v, n, p, [&](const linalg::Matrix& w) {
      consider(w);
      return true;
    });
  }
  res.candidates = static_cast<long long>(subspaces.size());

  std::vector<GroupPtr> built(subspaces.size());
  parallel_for(subspaces.size(), opt.threads, [&](std::size_t i) {
    std::vector<Element> gens = ev.canonical_gens();
    const auto& w = subspaces[i];
    for (int r = 0; r < w.rows; ++r) gens.push_back(sec.element(w.row(r)));
    built[i] = quotient(subgroup(cd.cover, gens)).group;
  });

  for (const auto& k : dedupe_isomorphic(built)) {
    if (!e.evaluate(k).is_trivial() || !is_sigma_group(k)) {
      ++res.sigma_rejected;
      continue;
    }
    res.groups.push_back(k);
  }
  return res;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::all_powerful:
      return "all_powerful";
    case Verdict::never_powerful:
      return "never_powerful";
    case Verdict::mixed:
      return "mixed";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

RecursionReport powerfulness_recursion(GroupPtr h0, const SubgroupRecipe& e, const RecursionOptions& opt) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto out_of_time = [&] {
    return opt.time_budget > 0 && std::chrono::duration<double>(clock::now() - start).count() > opt.time_budget;
  };
  auto observe = [&](const GroupPtr& g) {
    if (opt.observer) opt.observer(g);
  };

  RecursionReport rep;
  rep.e_name = e.name();
  const SubgroupRecipe e1 = SubgroupRecipe::frattini(e);
  const SubgroupRecipe e2 = SubgroupRecipe::e2(e);
  StepOptions sopt;
  sopt.threads = opt.threads;

  std::vector<GroupPtr> level;
  try {
    const auto init = schur_step(h0, SubgroupRecipe::p_central(3), SubgroupRecipe::zassenhaus(4), sopt);
    for (const auto& k : init.groups) {
      observe(k);
      ++rep.groups_examined;
      level.push_back(quotient(e2.evaluate(k)).group);
    }
  } catch (const Error& err) {
    rep.note = err.what();
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  level = dedupe_isomorphic(level);

  for (int j = 3; !level.empty(); ++j) {
    rep.levels_explored = j;
    const SubgroupRecipe d_j = SubgroupRecipe::product(SubgroupRecipe::p_central(j), e2);
    const SubgroupRecipe e_j = SubgroupRecipe::product(SubgroupRecipe::p_central(j + 1), e2);
    std::vector<GroupPtr> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const GroupPtr& h = level[i];
      observe(h);
      ++rep.groups_examined;
      if (!e1.evaluate(h).is_trivial()) {
        ++rep.negative;
      } else if (j >= opt.max_class || out_of_time()) {
        ++rep.unresolved;
        if (rep.note.empty()) rep.note = j >= opt.max_class ? "class bound reached" : "time budget exhausted";
      } else {
        try {
          const auto step = schur_step(h, e_j, d_j, sopt);
          if (step.step == 0) {
            ++rep.positive;
            rep.max_rank = std::max(rep.max_rank, e.evaluate(h).size_log());
          } else {
            for (const auto& k : step.groups) next.push_back(k);
          }
        } catch (const Error& err) {
          ++rep.unresolved;
          if (rep.note.empty()) rep.note = err.what();
        }
      }
      if (rep.positive > 0 && rep.negative > 0) {
        rep.verdict = Verdict::mixed;
        return rep;
      }
    }
    level = std::move(next);
  }
  if (rep.unresolved > 0) {
    rep.verdict = Verdict::inconclusive;
  } else if (rep.positive > 0) {
    rep.verdict = Verdict::all_powerful;
  } else if (rep.negative > 0) {
    rep.verdict = Verdict::never_powerful;
  } else {
    rep.verdict = Verdict::inconclusive;
    if (rep.note.empty()) rep.note = "no groups";
  }
  return rep;
}

std::string report_json(const RecursionReport& r) {
  nlohmann::ordered_json j;
  j["type"] = r.type;
  j["E"] = r.e_name;
  j["verdict"] = verdict_name(r.verdict);
  j["max_rank"] = r.verdict == Verdict::all_powerful ? nlohmann::ordered_json(r.max_rank) : nlohmann::ordered_json();
  j["levels_explored"] = r.levels_explored;
  j["groups_examined"] = r.groups_examined;
  j["positive"] = r.positive;
  j["negative"] = r.negative;
  j["unresolved"] = r.unresolved;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

}  // namespace schur
