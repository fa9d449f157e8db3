#include "schur/presentation.hpp"

#include "schur/filtrations.hpp"
#include "schur/linalg.hpp"

namespace schur {

namespace {

struct Candidate {
  Element x;
  Definition def;
};

/// Incremental independence test modulo a section.
class SpanTracker {
 public:
  SpanTracker(int dim, int p) : dim_(dim), p_(p) {}
  bool try_add(std::vector<int> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = pivots_[r];
      const int f = v[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        v[static_cast<std::size_t>(j)] = linalg::mod(v[static_cast<std::size_t>(j)] - f * rows_[r][static_cast<std::size_t>(j)], p_);
      }
    }
    int c = 0;
    while (c < dim_ && v[static_cast<std::size_t>(c)] == 0) ++c;
    if (c == dim_) return false;
    const int s = linalg::inv_mod(v[static_cast<std::size_t>(c)], p_);
    for (auto& e : v) e = e * s % p_;
    for (auto& row : rows_) {
      const int f = row[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        row[static_cast<std::size_t>(j)] = linalg::mod(row[static_cast<std::size_t>(j)] - f * v[static_cast<std::size_t>(j)], p_);
      }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(c);
    return true;
  }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int dim_, p_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> pivots_;
};

}  // namespace

Standardized to_pcentral(GroupPtr gp) {
  const PcGroup& g = *gp;
  const int p = g.prime();
  const FiltrationChain chain = lower_p_central_chain(gp);
  const auto& P = chain.terms;
  const int c = static_cast<int>(P.size()) - 1;

  std::vector<Element> gens;
  std::vector<int> weights;
  std::vector<Definition> defs;
  std::vector<std::vector<int>> layer_members(static_cast<std::size_t>(c));
  std::vector<SectionCoords> sections;
  std::vector<linalg::Matrix> inv_basis;

  for (int j = 0; j < c; ++j) {
    const SectionCoords sc(P[static_cast<std::size_t>(j)], P[static_cast<std::size_t>(j + 1)]);
    std::vector<Candidate> cands;
    if (j == 0) {
      for (int i = 0; i < g.ngens(); ++i) cands.push_back({g.generator(i), {Definition::Kind::generator, -1, -1}});
    } else {
      const auto& prev = layer_members[static_cast<std::size_t>(j - 1)];
      for (int a : prev) cands.push_back({g.pow(gens[static_cast<std::size_t>(a)], p), {Definition::Kind::power, a, -1}});
      for (int a : prev) {
        for (int b : layer_members[0]) {
          if (b >= a) continue;
          cands.push_back({g.comm(gens[static_cast<std::size_t>(a)], gens[static_cast<std::size_t>(b)]),
                           {Definition::Kind::commutator, a, b}});
        }
      }
    }
    SpanTracker span(sc.dim(), p);
    std::vector<std::vector<int>> rows;
    for (const auto& cand : cands) {
      if (span.rank() == sc.dim()) break;
      auto v = sc.coords(cand.x);
      if (!span.try_add(v)) continue;
      layer_members[static_cast<std::size_t>(j)].push_back(static_cast<int>(gens.size()));
      gens.push_back(cand.x);
      weights.push_back(j + 1);
      defs.push_back(cand.def);
      rows.push_back(std::move(v));
    }
    if (span.rank() != sc.dim()) throw Error("p-central layer not spanned by candidates");
    auto inv = linalg::inverse(linalg::Matrix::from_rows(rows, sc.dim()), p);
    if (!inv) throw Error("singular layer basis");
    inv_basis.push_back(*inv);
    sections.push_back(sc);
  }

  const int n = static_cast<int>(gens.size());
  // Normal form of x in the new generating sequence.
  auto express = [&](Element x) {
    Element y;
    for (int j = 0; j < c; ++j) {
      const auto v = sections[static_cast<std::size_t>(j)].coords(x);
      const auto a = linalg::mul(v, inv_basis[static_cast<std::size_t>(j)], p);
      Element prod;
      const auto& members = layer_members[static_cast<std::size_t>(j)];
      for (std::size_t t = 0; t < members.size(); ++t) {
        const int e = a[t];
        if (e == 0) continue;
        y[members[t]] = static_cast<std::uint8_t>(e);
        g.mul_assign(prod, g.pow(gens[static_cast<std::size_t>(members[t])], e));
      }
      x = g.mul(g.inv(prod), x);
    }
    if (!g.is_identity(x)) throw Error("element not expressed by new generators");
    return y;
  };

  std::vector<Element> powers(static_cast<std::size_t>(n));
  std::vector<Element> comms(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    powers[static_cast<std::size_t>(i)] = express(g.pow(gens[static_cast<std::size_t>(i)], p));
    for (int j = 0; j < i; ++j) {
      comms[static_cast<std::size_t>(i * n + j)] =
          express(g.comm(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)]));
    }
  }
  auto h = share(PcGroup(p, n, std::move(powers), std::move(comms)).with_definitions(weights, defs));
  Standardized s{h, GroupMap{h, gp, gens}, GroupMap{gp, h, {}}};
  for (int i = 0; i < g.ngens(); ++i) s.from_input.images.push_back(express(g.generator(i)));
  return s;
}

Standardized ensure_pcentral(GroupPtr g) {
  if (g->has_definitions() && g->validate_definitions()) {
    return {g, identity_map(g), identity_map(g)};
  }
  return to_pcentral(std::move(g));
}

}  // namespace schur
