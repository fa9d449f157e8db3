#include "schur/automorphisms.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "schur/filtrations.hpp"
#include "schur/invariants.hpp"
#include "schur/presentation.hpp"

namespace schur {

LiftSearch::LiftSearch(GroupPtr source, GroupPtr target) : source_(std::move(source)), target_(std::move(target)) {
  const PcGroup& a = *source_;
  if (!a.has_definitions()) throw Error("lift search needs a source with definitions");
  if (a.prime() != target_->prime()) throw Error("groups over different primes");
  d_ = a.rank();
  q_ = lower_p_central_chain(target_).terms;
  classes_ = static_cast<int>(q_.size()) - 1;
  for (int j = 0; j < classes_; ++j) sec_.emplace_back(q_[static_cast<std::size_t>(j)], q_[static_cast<std::size_t>(j + 1)]);

  compatible_ = a.ngens() == target_->ngens() && a.weight_class() == classes_;
  if (compatible_) {
    for (int j = 0; j < classes_; ++j) {
      const int w = static_cast<int>(std::count(a.weights().begin(), a.weights().end(), j + 1));
      if (w != sec_[static_cast<std::size_t>(j)].dim()) compatible_ = false;
    }
  }

  const auto& defs = a.definitions();
  auto is_def = [&](bool power, int i, int j) {
    for (const auto& df : defs) {
      if (power && df.kind == Definition::Kind::power && df.a == i) return true;
      if (!power && df.kind == Definition::Kind::commutator && df.a == i && df.b == j) return true;
    }
    return false;
  };
  const auto& w = a.weights();
  for (int i = 0; i < a.ngens(); ++i) {
    if (!is_def(true, i, -1)) relations_.push_back({true, i, -1, w[static_cast<std::size_t>(i)] + 1});
  }
  for (int i = 0; i < a.ngens(); ++i) {
    for (int j = 0; j < i; ++j) {
      if (!is_def(false, i, j)) {
        relations_.push_back({false, i, j, w[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(j)]});
      }
    }
  }
}

std::vector<Element> LiftSearch::full_images(const std::vector<Element>& b) const {
  return extend_by_definitions(*source_, *target_, b);
}

Element LiftSearch::defect(const Relation& r, const std::vector<Element>& img) const {
  const PcGroup& a = *source_;
  const PcGroup& t = *target_;
  const Element lhs = r.power ? t.pow(img[static_cast<std::size_t>(r.i)], a.prime())
                              : t.comm(img[static_cast<std::size_t>(r.i)], img[static_cast<std::size_t>(r.j)]);
  const Element& rel = r.power ? a.power_relation(r.i) : a.commutator_relation(r.i, r.j);
  Element rhs;
  for (int k = 0; k < a.ngens(); ++k) {
    if (rel[k] != 0) t.mul_assign(rhs, t.pow(img[static_cast<std::size_t>(k)], rel[k]));
  }
  return t.mul(t.inv(rhs), lhs);
}

bool LiftSearch::descend(int level, std::vector<Element>& b, const LiftOptions& opt, bool counting,
                         const std::function<bool(const std::vector<Element>&)>* visit,
                         unsigned long long& total) const {
  const PcGroup& t = *target_;
  const int p = t.prime();
  if (level == classes_) {
    if (counting) {
      ++total;
      return true;
    }
    return (*visit)(full_images(b));
  }
  const SectionCoords& lift = sec_[static_cast<std::size_t>(level)];
  const int k = lift.dim();
  const bool has_next = level + 1 < classes_;

  // Constraint vector: relation defects in Q_{j+1}/Q_{j+2}, then extra
  // constraint elements in Q_j/Q_{j+1}.
  auto evaluate = [&](const std::vector<Element>& bb, bool only_low) {
    std::vector<int> f;
    const auto img = full_images(bb);
    if (has_next) {
      const SectionCoords& rs = sec_[static_cast<std::size_t>(level + 1)];
      for (const auto& r : relations_) {
        if (only_low && r.weight > 2) {
          f.insert(f.end(), static_cast<std::size_t>(rs.dim()), 0);
          continue;
        }
        const auto c = rs.coords(defect(r, img));
        f.insert(f.end(), c.begin(), c.end());
      }
    }
    if (opt.constraint) {
      for (const auto& x : opt.constraint(img)) {
        const auto c = lift.coords(x);
        f.insert(f.end(), c.begin(), c.end());
      }
    }
    return f;
  };

  const int unknowns = d_ * k;
  if (unknowns == 0) return descend(level + 1, b, opt, counting, visit, total);

  const auto f0 = evaluate(b, false);
  const int eqs = static_cast<int>(f0.size());
  linalg::Matrix m(eqs, unknowns);
  std::vector<int> rhs(f0.size());
  for (int e = 0; e < eqs; ++e) rhs[static_cast<std::size_t>(e)] = linalg::mod(-f0[static_cast<std::size_t>(e)], p);
  // Columns from unit lifts; high-weight defects do not move at this layer.
  std::vector<Element> basis;
  for (int s = 0; s < k; ++s) {
    std::vector<int> unit(static_cast<std::size_t>(k), 0);
    unit[static_cast<std::size_t>(s)] = 1;
    basis.push_back(lift.element(unit));
  }
  if (eqs > 0) {
    const auto f0_low = evaluate(b, true);
    for (int i = 0; i < d_; ++i) {
      for (int s = 0; s < k; ++s) {
        std::vector<Element> bb = b;
        bb[static_cast<std::size_t>(i)] = t.mul(b[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(s)]);
        const auto fi = evaluate(bb, true);
        for (int e = 0; e < eqs; ++e) {
          m(e, i * k + s) = linalg::mod(fi[static_cast<std::size_t>(e)] - f0_low[static_cast<std::size_t>(e)], p);
        }
      }
    }
  }
  const auto sol = linalg::solve(m, rhs, p);
  if (!sol) return true;

  auto apply_lift = [&](const std::vector<int>& z) {
    std::vector<Element> bb = b;
    for (int i = 0; i < d_; ++i) {
      const std::span<const int> zi(z.data() + i * k, static_cast<std::size_t>(k));
      bb[static_cast<std::size_t>(i)] = t.mul(b[static_cast<std::size_t>(i)], lift.element(zi));
    }
    return bb;
  };
  auto check = [&](const std::vector<int>& z) {
    const auto f = evaluate(apply_lift(z), false);
    for (int v : f) {
      if (v != 0) throw Error("lift system is not affine");
    }
  };
  const auto& dirs = sol->directions;
  check(sol->particular);
  for (const auto& dvec : dirs) {
    std::vector<int> z = sol->particular;
    for (int u = 0; u < unknowns; ++u) z[static_cast<std::size_t>(u)] = (z[static_cast<std::size_t>(u)] + dvec[static_cast<std::size_t>(u)]) % p;
    check(z);
  }

  if (counting && level + 1 == classes_) {
    unsigned long long c = 1;
    for (std::size_t i = 0; i < dirs.size(); ++i) c *= static_cast<unsigned long long>(p);
    total += c;
    return true;
  }
  std::vector<int> coef(dirs.size(), 0);
  while (true) {
    std::vector<int> z = sol->particular;
    for (std::size_t t2 = 0; t2 < dirs.size(); ++t2) {
      if (coef[t2] == 0) continue;
      for (int u = 0; u < unknowns; ++u) {
        z[static_cast<std::size_t>(u)] = (z[static_cast<std::size_t>(u)] + coef[t2] * dirs[t2][static_cast<std::size_t>(u)]) % p;
      }
    }
    std::vector<Element> bb = apply_lift(z);
    if (!descend(level + 1, bb, opt, counting, visit, total)) return false;
    std::size_t pos = dirs.size();
    while (pos > 0) {
      --pos;
      if (++coef[pos] < p) break;
      coef[pos] = 0;
      if (pos == 0) return true;
    }
    if (dirs.empty()) return true;
  }
}

void LiftSearch::run(const LiftOptions& opt, bool counting,
                     const std::function<bool(const std::vector<Element>&)>* visit,
                     unsigned long long* total) const {
  if (!compatible_) return;
  const PcGroup& t = *target_;
  const int p = t.prime();
  if (classes_ == 0) {
    // trivial groups
    if (counting) {
      *total += 1;
    } else {
      (*visit)({});
    }
    return;
  }
  const SectionCoords& top = sec_[0];

  auto start = [&](const linalg::Matrix& m, std::vector<Element>& b) {
    if (opt.matrix_filter && !opt.matrix_filter(m)) return false;
    b.clear();
    for (int i = 0; i < d_; ++i) {
      const auto row = m.row(i);
      b.push_back(top.element(row));
    }
    const auto img = full_images(b);
    const Subgroup& q2 = classes_ >= 2 ? q_[2] : q_[1];
    for (const auto& r : relations_) {
      if (!q2.contains(defect(r, img))) return false;
    }
    if (opt.constraint) {
      for (const auto& x : opt.constraint(img)) {
        if (!q_[1].contains(x)) return false;
      }
    }
    return true;
  };

  if (!counting || opt.threads <= 1) {
    unsigned long long local = 0;
    linalg::for_each_invertible(d_, p, [&](const linalg::Matrix& m) {
      std::vector<Element> b;
      if (!start(m, b)) return true;
      return descend(1, b, opt, counting, visit, local);
    });
    if (total) *total += local;
    return;
  }
  // Work items: first rows of the Frattini-quotient matrix.
  std::vector<std::vector<int>> firsts;
  {
    long long size = 1;
    for (int i = 0; i < d_; ++i) size *= p;
    for (long long code = 1; code < size; ++code) {
      std::vector<int> row(static_cast<std::size_t>(d_));
      long long c = code;
      for (int i = d_ - 1; i >= 0; --i) {
        row[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      firsts.push_back(std::move(row));
    }
  }
  std::atomic<std::size_t> next{0};
  std::atomic<unsigned long long> sum{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < firsts.size(); i = next++) {
        unsigned long long local = 0;
        linalg::for_each_invertible(
            d_, p,
            [&](const linalg::Matrix& m) {
              std::vector<Element> b;
              if (!start(m, b)) return true;
              return descend(1, b, opt, true, nullptr, local);
            },
            {firsts[i]});
        sum += local;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < opt.threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  *total += sum;
}

unsigned long long LiftSearch::count(const LiftOptions& opt) const {
  unsigned long long total = 0;
  run(opt, true, nullptr, &total);
  return total;
}

void LiftSearch::for_each(const LiftOptions& opt,
                          const std::function<bool(const std::vector<Element>&)>& visit) const {
  run(opt, false, &visit, nullptr);
}

std::optional<std::vector<Element>> LiftSearch::find_one(const LiftOptions& opt) const {
  std::optional<std::vector<Element>> out;
  for_each(opt, [&](const std::vector<Element>& img) {
    out = img;
    return false;
  });
  return out;
}

unsigned long long automorphism_count(GroupPtr g, int max_log, int threads) {
  if (g->ngens() > max_log) throw Error("group order above the automorphism bound");
  const Standardized s = ensure_pcentral(std::move(g));
  LiftOptions opt;
  opt.threads = threads;
  return LiftSearch(s.group, s.group).count(opt);
}

std::vector<GroupMap> automorphisms_with(GroupPtr g, const std::function<bool(const linalg::Matrix&)>& filter,
                                         int max_log) {
  if (g->ngens() > max_log) throw Error("group order above the automorphism bound");
  const Standardized s = ensure_pcentral(g);
  LiftOptions opt;
  opt.matrix_filter = filter;
  std::vector<GroupMap> out;
  LiftSearch(s.group, s.group).for_each(opt, [&](const std::vector<Element>& img) {
    const GroupMap alpha{s.group, s.group, img};
    out.push_back(s.from_input.compose(alpha).compose(s.to_input));
    return true;
  });
  return out;
}

std::optional<GroupMap> find_isomorphism(GroupPtr a, GroupPtr b) {
  if (a->prime() != b->prime() || a->ngens() != b->ngens()) return std::nullopt;
  if (!(group_invariants(a) == group_invariants(b))) return std::nullopt;
  return search_isomorphism(std::move(a), std::move(b));
}

std::optional<GroupMap> search_isomorphism(GroupPtr a, GroupPtr b) {
  if (a->prime() != b->prime() || a->ngens() != b->ngens()) return std::nullopt;
  const Standardized s = ensure_pcentral(a);
  const auto img = LiftSearch(s.group, b).find_one();
  if (!img) return std::nullopt;
  const GroupMap phi{s.group, b, *img};
  return s.from_input.compose(phi);
}

bool is_isomorphic(GroupPtr a, GroupPtr b) { return find_isomorphism(std::move(a), std::move(b)).has_value(); }

}  // namespace schur
