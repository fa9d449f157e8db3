#include "schur/covers.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include "schur/automorphisms.hpp"
#include "schur/filtrations.hpp"
#include "schur/invariants.hpp"
#include "schur/linalg.hpp"
#include "schur/presentation.hpp"

namespace schur {

namespace {

struct Tail {
  bool power;
  int i, j;
};

/// Build the tailed presentation where tail t of `tails` equals the linear
/// combination expr[t] of the free tail generators appended after g.
PcGroup tailed_group(const PcGroup& h, const std::vector<Tail>& tails, const std::vector<std::vector<int>>& expr,
                     int free_count) {
  const int n = h.ngens();
  const int m = n + free_count;
  if (m > kMaxGens) throw Error("p-cover exceeds the supported number of generators");
  std::vector<Element> powers(static_cast<std::size_t>(m));
  std::vector<Element> comms(static_cast<std::size_t>(m * m));
  for (int i = 0; i < n; ++i) {
    powers[static_cast<std::size_t>(i)] = h.power_relation(i);
    for (int j = 0; j < i; ++j) comms[static_cast<std::size_t>(i * m + j)] = h.commutator_relation(i, j);
  }
  for (std::size_t t = 0; t < tails.size(); ++t) {
    Element& w = tails[t].power ? powers[static_cast<std::size_t>(tails[t].i)]
                                : comms[static_cast<std::size_t>(tails[t].i * m + tails[t].j)];
    for (int f = 0; f < free_count; ++f) w[n + f] = static_cast<std::uint8_t>(expr[t][static_cast<std::size_t>(f)]);
  }
  return PcGroup(h.prime(), m, std::move(powers), std::move(comms));
}

}  // namespace

CoverData p_cover(GroupPtr g, int max_rank) {
  if (generator_rank(g) > max_rank) throw Error("generator rank above the cover bound");
  const Standardized s = ensure_pcentral(g);
  const PcGroup& h = *s.group;
  const int p = h.prime();
  const int n = h.ngens();
  const int c = n == 0 ? 0 : h.weight_class();
  const auto& w = h.weights();
  const auto& defs = h.definitions();

  std::vector<Tail> tails;
  auto defined_by = [&](bool power, int i, int j) {
    for (const auto& d : defs) {
      if (power && d.kind == Definition::Kind::power && d.a == i) return true;
      if (!power && d.kind == Definition::Kind::commutator && d.a == i && d.b == j) return true;
    }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    if (!defined_by(true, i, -1)) tails.push_back({true, i, -1});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      // such commutators lie in P_{c+1} of the cover, which is trivial
      if (w[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(j)] > c + 1) continue;
      if (!defined_by(false, i, j)) tails.push_back({false, i, j});
    }
  }
  const int t_count = static_cast<int>(tails.size());

  linalg::Matrix rel(0, t_count);
  std::vector<int> pivots;
  std::optional<PcGroup> e;
  std::vector<int> free_cols;
  while (true) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(t_count), false);
    for (int c0 : pivots) is_pivot[static_cast<std::size_t>(c0)] = true;
    free_cols.clear();
    for (int t = 0; t < t_count; ++t) {
      if (!is_pivot[static_cast<std::size_t>(t)]) free_cols.push_back(t);
    }
    const int fc = static_cast<int>(free_cols.size());
    std::vector<std::vector<int>> expr(static_cast<std::size_t>(t_count), std::vector<int>(static_cast<std::size_t>(fc), 0));
    for (int f = 0; f < fc; ++f) expr[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(f)])][static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      for (int f = 0; f < fc; ++f) {
        expr[static_cast<std::size_t>(pivots[r])][static_cast<std::size_t>(f)] =
            linalg::mod(-rel(static_cast<int>(r), free_cols[static_cast<std::size_t>(f)]), p);
      }
    }
    e.emplace(tailed_group(h, tails, expr, fc));

    std::vector<std::vector<int>> found;
    e->for_each_consistency_test([&](const Element& lhs, const Element& rhs) {
      // tails are central of order p: both sides differ by a tail vector
      for (int k = 0; k < n; ++k) {
        if (lhs[k] != rhs[k]) throw Error("base presentation is inconsistent");
      }
      std::vector<int> v(static_cast<std::size_t>(t_count), 0);
      bool nonzero = false;
      for (int f = 0; f < fc; ++f) {
        const int diff = linalg::mod(rhs[n + f] - lhs[n + f], p);
        v[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(f)])] = diff;
        nonzero = nonzero || diff != 0;
      }
      if (nonzero) found.push_back(std::move(v));
    });
    if (found.empty()) break;
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < rel.rows; ++r) rows.push_back(rel.row(r));
    for (auto& v : found) rows.push_back(std::move(v));
    rel = linalg::Matrix::from_rows(rows, t_count);
    pivots = linalg::rref(rel, p);
  }

  CoverData cd;
  cd.base = g;
  cd.cover = share(std::move(*e));
  const PcGroup& cov = *cd.cover;
  cd.projection = GroupMap{cd.cover, g, {}};
  for (int i = 0; i < cov.ngens(); ++i) {
    cd.projection.images.push_back(i < n ? s.to_input.apply(h.generator(i)) : Element{});
  }
  std::vector<Element> tail_gens;
  for (int i = n; i < cov.ngens(); ++i) tail_gens.push_back(cov.generator(i));
  cd.multiplicator = subgroup(cd.cover, tail_gens);
  cd.nucleus = lower_p_central_term(cd.cover, c);
  cd.mu_rank = cd.multiplicator.size_log();
  cd.nu_rank = cd.nucleus.size_log();
  if (!cd.multiplicator.contains(cd.nucleus)) throw Error("nucleus outside the multiplicator");
  return cd;
}

int dim_E_in_cover(const CoverData& cd, const SubgroupRecipe& e, bool require_in_multiplicator) {
  const Subgroup img = e.evaluate(cd.cover);
  if (require_in_multiplicator && !cd.multiplicator.contains(img)) {
    throw Error("recipe " + e.name() + " is not contained in the multiplicator");
  }
  return img.size_log();
}

GroupPtr cover_quotient(const CoverData& cd, const linalg::Matrix& subspace) {
  const int n = cd.cover->ngens() - cd.mu_rank;
  std::vector<Element> gens;
  for (int r = 0; r < subspace.rows; ++r) {
    Element x;
    for (int k = 0; k < cd.mu_rank; ++k) x[n + k] = static_cast<std::uint8_t>(subspace(r, k));
    gens.push_back(x);
  }
  return quotient(subgroup(cd.cover, gens)).group;
}

std::vector<GroupPtr> dedupe_isomorphic(const std::vector<GroupPtr>& groups) {
  std::vector<GroupPtr> reps;
  std::vector<GroupInvariants> inv;
  for (const auto& g : groups) {
    GroupInvariants gi = group_invariants(g);
    bool seen = false;
    for (std::size_t r = 0; r < reps.size() && !seen; ++r) {
      seen = inv[r] == gi && search_isomorphism(g, reps[r]).has_value();
    }
    if (!seen) {
      reps.push_back(g);
      inv.push_back(std::move(gi));
    }
  }
  return reps;
}

std::vector<GroupPtr> immediate_descendants(GroupPtr g, int step, int threads) {
  if (step <= 0) throw Error("descendant step must be positive");
  return immediate_descendants(p_cover(std::move(g)), step, threads);
}

std::vector<GroupPtr> immediate_descendants(const CoverData& cd, int step, int threads) {
  if (step <= 0) throw Error("descendant step must be positive");
  if (step > cd.mu_rank) return {};
  const int p = cd.cover->prime();
  const int mu = cd.mu_rank;
  const int n = cd.cover->ngens() - mu;
  const int c = p_class(cd.base);
  std::vector<std::vector<int>> nucleus_rows;
  for (const auto& x : cd.nucleus.canonical_gens()) {
    std::vector<int> v(static_cast<std::size_t>(mu));
    for (int k = 0; k < mu; ++k) v[static_cast<std::size_t>(k)] = x[n + k];
    nucleus_rows.push_back(std::move(v));
  }
  std::vector<linalg::Matrix> allowable;
  linalg::for_each_subspace(mu, mu - step, p, [&](const linalg::Matrix& u) {
    std::vector<std::vector<int>> rows = nucleus_rows;
    for (int r = 0; r < u.rows; ++r) rows.push_back(u.row(r));
    if (linalg::rank(linalg::Matrix::from_rows(rows, mu), p) == mu) allowable.push_back(u);
    return true;
  });

  std::vector<GroupPtr> out(allowable.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < allowable.size(); i = next++) {
        GroupPtr k = cover_quotient(cd, allowable[i]);
        if (p_class(k) == c + 1) out[i] = std::move(k);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      err = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  std::vector<GroupPtr> kept;
  for (auto& k : out) {
    if (k) kept.push_back(std::move(k));
  }
  return dedupe_isomorphic(kept);
}

}  // namespace schur
