#include "schur/subgroup.hpp"

#include <algorithm>

#include "schur/linalg.hpp"

namespace schur {

Subgroup::Subgroup(GroupPtr owner) : owner_(std::move(owner)) { finish(); }

Subgroup::Subgroup(GroupPtr owner, std::span<const Element> gens) {
  SubgroupBuilder b(std::move(owner));
  b.add_all(gens);
  *this = b.build();
}

Subgroup Subgroup::whole(GroupPtr owner) {
  std::vector<Element> gens;
  for (int i = 0; i < owner->ngens(); ++i) gens.push_back(owner->generator(i));
  SubgroupBuilder b(std::move(owner));
  b.add_all(gens);
  return b.build();
}

void Subgroup::finish() {
  slot_.fill(-1);
  depths_.clear();
  for (std::size_t i = 0; i < canon_.size(); ++i) {
    const int d = owner_->depth(canon_[i]);
    depths_.push_back(d);
    slot_[static_cast<std::size_t>(d)] = static_cast<int>(i);
  }
}

Element Subgroup::sift(Element x) const {
  const PcGroup& g = *owner_;
  const int p = g.prime();
  for (int d = 0; d < g.ngens(); ++d) {
    const int e = x[d];
    if (e == 0) continue;
    const int s = slot_[static_cast<std::size_t>(d)];
    if (s < 0) return x;
    x = g.mul(g.pow(canon_[static_cast<std::size_t>(s)], p - e), x);
  }
  return x;
}

bool Subgroup::contains(const Element& x) const { return owner_->is_identity(sift(x)); }

bool Subgroup::contains(const Subgroup& other) const {
  if (other.size_log() > size_log()) return false;
  return std::all_of(other.canon_.begin(), other.canon_.end(), [&](const Element& x) { return contains(x); });
}

bool Subgroup::is_normalized_by(std::span<const Element> by) const {
  for (const auto& c : canon_) {
    for (const auto& g : by) {
      if (!contains(owner_->conj(c, g))) return false;
    }
  }
  return true;
}

bool Subgroup::is_normal() const {
  const auto gens = group_generators(*owner_);
  return is_normalized_by(gens);
}

SubgroupBuilder::SubgroupBuilder(GroupPtr owner) : owner_(std::move(owner)) {}

SubgroupBuilder::SubgroupBuilder(const Subgroup& start) : owner_(start.owner()) {
  for (const auto& c : start.canonical_gens()) {
    const int d = owner_->depth(c);
    table_[static_cast<std::size_t>(d)] = c;
    has_[static_cast<std::size_t>(d)] = true;
    ++count_;
  }
  generators_ = start.generators();
}

Element SubgroupBuilder::reduce(Element x) const {
  const PcGroup& g = *owner_;
  const int p = g.prime();
  for (int d = 0; d < g.ngens(); ++d) {
    const int e = x[d];
    if (e == 0) continue;
    if (!has_[static_cast<std::size_t>(d)]) return x;
    x = g.mul(g.pow(table_[static_cast<std::size_t>(d)], p - e), x);
  }
  return x;
}

bool SubgroupBuilder::contains(const Element& x) const { return owner_->is_identity(reduce(x)); }

bool SubgroupBuilder::add(const Element& x) {
  const PcGroup& g = *owner_;
  const int p = g.prime();
  if (!g.is_identity(x)) generators_.push_back(x);
  std::vector<Element> work{x};
  bool grew = false;
  while (!work.empty()) {
    Element y = reduce(work.back());
    work.pop_back();
    if (g.is_identity(y)) continue;
    const int d = g.depth(y);
    y = g.pow(y, linalg::inv_mod(y[d], p));
    for (int t = 0; t < g.ngens(); ++t) {
      if (has_[static_cast<std::size_t>(t)]) work.push_back(g.comm(y, table_[static_cast<std::size_t>(t)]));
    }
    table_[static_cast<std::size_t>(d)] = y;
    has_[static_cast<std::size_t>(d)] = true;
    ++count_;
    grew = true;
    work.push_back(g.pow(y, p));
  }
  return grew;
}

void SubgroupBuilder::add_all(std::span<const Element> xs) {
  for (const auto& x : xs) add(x);
}

void SubgroupBuilder::close_under_conjugation(std::span<const Element> by) {
  const PcGroup& g = *owner_;
  std::array<bool, kMaxGens> done{};
  bool again = true;
  while (again) {
    again = false;
    for (int d = 0; d < g.ngens(); ++d) {
      if (!has_[static_cast<std::size_t>(d)] || done[static_cast<std::size_t>(d)]) continue;
      done[static_cast<std::size_t>(d)] = true;
      const Element h = table_[static_cast<std::size_t>(d)];
      for (const auto& x : by) {
        if (add(g.conj(h, x))) again = true;
      }
    }
  }
}

std::vector<Element> SubgroupBuilder::elements() const {
  std::vector<Element> r;
  for (int d = 0; d < owner_->ngens(); ++d) {
    if (has_[static_cast<std::size_t>(d)]) r.push_back(table_[static_cast<std::size_t>(d)]);
  }
  return r;
}

Subgroup SubgroupBuilder::build() const {
  const PcGroup& g = *owner_;
  const int p = g.prime();
  Subgroup s;
  s.owner_ = owner_;
  s.generators_ = generators_;
  for (int d = 0; d < g.ngens(); ++d) {
    if (!has_[static_cast<std::size_t>(d)]) continue;
    Element x = table_[static_cast<std::size_t>(d)];
    for (int t = d + 1; t < g.ngens(); ++t) {
      const int e = x[t];
      if (e == 0 || !has_[static_cast<std::size_t>(t)]) continue;
      x = g.mul(x, g.pow(table_[static_cast<std::size_t>(t)], p - e));
    }
    s.canon_.push_back(x);
  }
  s.finish();
  return s;
}

std::vector<Element> group_generators(const PcGroup& g) {
  std::vector<Element> gens;
  const bool defs = g.has_definitions() && g.ngens() > 0;
  for (int i = 0; i < g.ngens(); ++i) {
    if (!defs || g.weights()[static_cast<std::size_t>(i)] == 1) gens.push_back(g.generator(i));
  }
  return gens;
}

Subgroup subgroup(GroupPtr g, std::span<const Element> gens) { return Subgroup(std::move(g), gens); }

Subgroup normal_closure(GroupPtr g, std::span<const Element> gens) {
  const auto by = group_generators(*g);
  SubgroupBuilder b(std::move(g));
  b.add_all(gens);
  b.close_under_conjugation(by);
  return b.build();
}

Subgroup normal_closure(const Subgroup& h) {
  const auto by = group_generators(h.group());
  SubgroupBuilder b(h);
  b.close_under_conjugation(by);
  return b.build();
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  if (a.owner() != b.owner()) throw Error("subgroups belong to different groups");
  const PcGroup& g = a.group();
  SubgroupBuilder out(a.owner());
  for (const auto& x : a.canonical_gens()) {
    for (const auto& y : b.canonical_gens()) out.add(g.comm(x, y));
  }
  std::vector<Element> by = a.canonical_gens();
  by.insert(by.end(), b.canonical_gens().begin(), b.canonical_gens().end());
  out.close_under_conjugation(by);
  return out.build();
}

Subgroup agemo(const Subgroup& h, int i) {
  const PcGroup& g = h.group();
  const int p = g.prime();
  long long q = 1;
  for (int t = 0; t < i; ++t) q *= p;
  const auto gens = group_generators(g);
  // A must stay inside H and normal in H for the transversal argument.
  const bool normal = h.is_normalized_by(gens);
  const std::vector<Element>& by = normal ? gens : h.canonical_gens();
  SubgroupBuilder a(h.owner());
  for (const auto& c : h.canonical_gens()) a.add(g.pow(c, q));
  a.close_under_conjugation(by);
  if (i == 0) return a.build();

  // Every p^i-th power lies in t^(p^i) A for t in a transversal of H/A.
  bool restart = true;
  while (restart) {
    restart = false;
    std::vector<Element> tgens;
    const Subgroup cur = a.build();
    for (const auto& c : h.canonical_gens()) {
      if (!cur.has_depth(g.depth(c))) tgens.push_back(c);
    }
    const int k = static_cast<int>(tgens.size());
    if (k <= 1) break;
    std::vector<Element> prefix(static_cast<std::size_t>(k + 1));
    std::vector<int> digit(static_cast<std::size_t>(k), 0);
    // depth-first odometer; prefix[t] is the product of the first t factors
    int level = 0;
    while (level >= 0 && !restart) {
      if (level == k) {
        const Element t = prefix[static_cast<std::size_t>(k)];
        const Element tq = g.pow(t, q);
        if (!cur.contains(tq)) {
          a.add(tq);
          a.close_under_conjugation(by);
          restart = true;
          break;
        }
        --level;
        continue;
      }
      int& dg = digit[static_cast<std::size_t>(level)];
      if (dg == p) {
        dg = 0;
        --level;
        continue;
      }
      prefix[static_cast<std::size_t>(level + 1)] =
          dg == 0 ? prefix[static_cast<std::size_t>(level)]
                  : g.mul(prefix[static_cast<std::size_t>(level + 1)], tgens[static_cast<std::size_t>(level)]);
      ++dg;
      ++level;
    }
  }
  if (!normal) a.close_under_conjugation(gens);
  return a.build();
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  if (a.owner() != b.owner()) throw Error("subgroups belong to different groups");
  SubgroupBuilder out(a);
  out.add_all(b.canonical_gens());
  return out.build();
}

Subgroup kernel_of_functional(const Subgroup& h, const std::function<int(const Element&)>& f) {
  const PcGroup& g = h.group();
  const int p = g.prime();
  const auto& gens = h.canonical_gens();
  std::vector<int> vals;
  int j = -1;
  for (std::size_t t = 0; t < gens.size(); ++t) {
    vals.push_back(f(gens[t]) % p);
    if (j < 0 && vals.back() != 0) j = static_cast<int>(t);
  }
  if (j < 0) return h;
  const Element& cj = gens[static_cast<std::size_t>(j)];
  const int inv = linalg::inv_mod(vals[static_cast<std::size_t>(j)], p);
  SubgroupBuilder b(h.owner());
  for (std::size_t t = 0; t < gens.size(); ++t) {
    if (static_cast<int>(t) == j) continue;
    const int s = vals[t] * inv % p;
    b.add(g.mul(gens[t], g.pow(cj, p - s)));
  }
  b.add(g.pow(cj, p));
  // Schreier generators are conjugates by powers of cj
  const Element by[] = {cj};
  b.close_under_conjugation(by);
  return b.build();
}

Subgroup centralizer(const Subgroup& h, std::span<const Element> xs) {
  const PcGroup& g = h.group();
  Subgroup c = h;
  for (const auto& x : xs) {
    for (int k = 0; k < g.ngens(); ++k) {
      c = kernel_of_functional(c, [&](const Element& y) { return g.comm(x, y)[k]; });
    }
  }
  return c;
}

Subgroup centre(GroupPtr g) {
  const auto gens = group_generators(*g);
  return centralizer(Subgroup::whole(std::move(g)), gens);
}

SectionCoords::SectionCoords(const Subgroup& n, const Subgroup& m) : n_(n), m_(m) {
  index_.fill(-1);
  for (int d : n.depths()) {
    if (!m.has_depth(d)) {
      index_[static_cast<std::size_t>(d)] = static_cast<int>(basis_depths_.size());
      basis_depths_.push_back(d);
    }
  }
}

std::vector<int> SectionCoords::coords(const Element& x0) const {
  const PcGroup& g = n_.group();
  std::vector<int> c(basis_depths_.size(), 0);
  Element x = x0;
  for (int d = 0; d < g.ngens(); ++d) {
    const int e = x[d];
    if (e == 0) continue;
    if (m_.has_depth(d)) {
      x = g.mul(g.pow(m_.at_depth(d), -e), x);
    } else if (index_[static_cast<std::size_t>(d)] >= 0) {
      c[static_cast<std::size_t>(index_[static_cast<std::size_t>(d)])] = e;
      x = g.mul(g.pow(n_.at_depth(d), -e), x);
    } else {
      throw Error("element outside the section");
    }
  }
  return c;
}

Element SectionCoords::element(std::span<const int> v) const {
  const PcGroup& g = n_.group();
  Element x;
  for (std::size_t t = 0; t < basis_depths_.size(); ++t) {
    if (v[t] != 0) g.mul_assign(x, g.pow(n_.at_depth(basis_depths_[t]), v[t]));
  }
  return x;
}

}  // namespace schur
