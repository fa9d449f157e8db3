// Brute-force oracles over explicit multiplication tables.  Only usable for
// small orders; they share nothing with the library beyond PcGroup::mul.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "schur/pcgroup.hpp"

namespace oracle {

/// Elements numbered by their normal form read as a base-p integer.
struct Table {
  int p = 0, n = 0, order = 1;
  std::vector<int> mul;  // order * order
  std::vector<int> inv;

  int operator()(int a, int b) const { return mul[static_cast<std::size_t>(a) * order + b]; }

  static Table of(const schur::PcGroup& g) {
    Table t;
    t.p = g.prime();
    t.n = g.ngens();
    for (int i = 0; i < t.n; ++i) t.order *= t.p;
    std::vector<schur::Element> els(static_cast<std::size_t>(t.order));
    for (int x = 0; x < t.order; ++x) els[static_cast<std::size_t>(x)] = t.element(x);
    t.mul.resize(static_cast<std::size_t>(t.order) * t.order);
    t.inv.resize(static_cast<std::size_t>(t.order));
    for (int a = 0; a < t.order; ++a) {
      for (int b = 0; b < t.order; ++b) {
        const int c = t.index(g.mul(els[static_cast<std::size_t>(a)], els[static_cast<std::size_t>(b)]));
        t.mul[static_cast<std::size_t>(a) * t.order + b] = c;
        if (c == 0) t.inv[static_cast<std::size_t>(a)] = b;
      }
    }
    return t;
  }
  schur::Element element(int x) const {
    schur::Element e;
    for (int i = n - 1; i >= 0; --i) {
      e[i] = static_cast<std::uint8_t>(x % p);
      x /= p;
    }
    return e;
  }
  int index(const schur::Element& e) const {
    int x = 0;
    for (int i = 0; i < n; ++i) x = x * p + e[i];
    return x;
  }
  int gen(int i) const {
    int x = 1;
    for (int k = i + 1; k < n; ++k) x *= p;
    return x;
  }
  int comm(int a, int b) const { return (*this)((*this)(inv[a], inv[b]), (*this)(a, b)); }
  int power(int a, int e) const {
    int r = 0;
    for (int k = 0; k < e; ++k) r = (*this)(r, a);
    return r;
  }

  /// Subgroup generated by xs, as a sorted element list.
  std::vector<int> closure(const std::vector<int>& xs) const {
    std::vector<char> in(static_cast<std::size_t>(order), 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (int x : xs) {
        const int y = (*this)(out[k], x);
        if (!in[static_cast<std::size_t>(y)]) {
          in[static_cast<std::size_t>(y)] = 1;
          out.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Pc generators picked greedily until they generate the group.
inline std::vector<int> generating_set(const Table& t) {
  std::vector<int> gens;
  for (int i = 0; i < t.n; ++i) {
    const auto h = t.closure(gens);
    if (!std::binary_search(h.begin(), h.end(), t.gen(i))) gens.push_back(t.gen(i));
    if (static_cast<int>(t.closure(gens).size()) == t.order) break;
  }
  return gens;
}

/// Does x_i -> y_i extend to an isomorphism A -> B?  Checked along the
/// Cayley graph of A.
inline bool extends_to_isomorphism(const Table& a, const std::vector<int>& xs, const Table& b,
                                   const std::vector<int>& ys) {
  if (a.order != b.order) return false;
  std::vector<int> phi(static_cast<std::size_t>(a.order), -1);
  std::vector<char> hit(static_cast<std::size_t>(b.order), 0);
  phi[0] = 0;
  hit[0] = 1;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const int g = queue[k];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const int h = a(g, xs[i]);
      const int v = b(phi[static_cast<std::size_t>(g)], ys[i]);
      if (phi[static_cast<std::size_t>(h)] < 0) {
        if (hit[static_cast<std::size_t>(v)]) return false;
        phi[static_cast<std::size_t>(h)] = v;
        hit[static_cast<std::size_t>(v)] = 1;
        queue.push_back(h);
      } else if (phi[static_cast<std::size_t>(h)] != v) {
        return false;
      }
    }
  }
  return static_cast<int>(queue.size()) == a.order;
}

inline std::vector<int> element_orders(const Table& t) {
  std::vector<int> ord(static_cast<std::size_t>(t.order), 1);
  for (int x = 0; x < t.order; ++x) {
    for (int y = x; y != 0; y = t(y, x)) ++ord[static_cast<std::size_t>(x)];
  }
  return ord;
}

/// Number of generator-image tuples in B^d extending to isomorphisms.  Each
/// image ranges over the elements of the same order as its generator.
inline unsigned long long count_isomorphisms(const Table& a, const Table& b, bool stop_at_first = false) {
  const auto xs = generating_set(a);
  const std::size_t d = xs.size();
  const auto oa = element_orders(a);
  const auto ob = element_orders(b);
  std::vector<std::vector<int>> cands(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (int y = 0; y < b.order; ++y) {
      if (ob[static_cast<std::size_t>(y)] == oa[static_cast<std::size_t>(xs[i])]) cands[i].push_back(y);
    }
    if (cands[i].empty()) return 0;
  }
  std::vector<std::size_t> pick(d, 0);
  std::vector<int> ys(d);
  unsigned long long count = 0;
  while (true) {
    for (std::size_t i = 0; i < d; ++i) ys[i] = cands[i][pick[i]];
    if (extends_to_isomorphism(a, xs, b, ys)) {
      ++count;
      if (stop_at_first) return count;
    }
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < cands[pos].size()) break;
      pick[pos] = 0;
      if (pos == 0) return count;
    }
    if (d == 0) return count;
  }
}

/// The isomorphism A -> B extending x_i -> y_i as a full element map, or
/// empty when there is none.
inline std::vector<int> extend_map(const Table& a, const std::vector<int>& xs, const Table& b, const std::vector<int>& ys) {
  if (!extends_to_isomorphism(a, xs, b, ys)) return {};
  std::vector<int> phi(static_cast<std::size_t>(a.order), -1);
  phi[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const int h = a(queue[k], xs[i]);
      if (phi[static_cast<std::size_t>(h)] < 0) {
        phi[static_cast<std::size_t>(h)] = b(phi[static_cast<std::size_t>(queue[k])], ys[i]);
        queue.push_back(h);
      }
    }
  }
  return phi;
}

/// Every automorphism as an element map.
inline std::vector<std::vector<int>> automorphisms(const Table& t) {
  const auto xs = generating_set(t);
  std::vector<std::vector<int>> out;
  std::vector<int> ys(xs.size(), 0);
  while (true) {
    auto phi = extend_map(t, xs, t, ys);
    if (!phi.empty()) out.push_back(std::move(phi));
    std::size_t pos = 0;
    while (pos < ys.size() && ++ys[pos] == t.order) ys[pos++] = 0;
    if (pos == ys.size()) return out;
  }
}

/// Frattini subgroup: generated by p-th powers and commutators.
inline std::vector<int> frattini(const Table& t) {
  std::vector<int> gens;
  for (int x = 0; x < t.order; ++x) {
    gens.push_back(t.power(x, t.p));
    for (int y = 0; y < t.order; ++y) gens.push_back(t.comm(x, y));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return t.closure(gens);
}

struct SigmaFacts {
  bool exists = false;
  unsigned long long centralizer = 0;  // |Aut_sigma| for the first sigma found
};

/// Involutions acting as -1 on G/Fr(G), found among all automorphisms.
inline SigmaFacts sigma_facts(const Table& t) {
  const auto auts = automorphisms(t);
  const auto fr = frattini(t);
  SigmaFacts f;
  for (const auto& s : auts) {
    bool ok = true;
    for (int x = 0; x < t.order && ok; ++x) {
      ok = s[static_cast<std::size_t>(s[static_cast<std::size_t>(x)])] == x &&
           std::binary_search(fr.begin(), fr.end(), t(s[static_cast<std::size_t>(x)], x));
    }
    if (!ok) continue;
    f.exists = true;
    for (const auto& a : auts) {
      bool commute = true;
      for (int x = 0; x < t.order && commute; ++x) {
        commute = a[static_cast<std::size_t>(s[static_cast<std::size_t>(x)])] ==
                  s[static_cast<std::size_t>(a[static_cast<std::size_t>(x)])];
      }
      if (commute) ++f.centralizer;
    }
    return f;
  }
  return f;
}

inline unsigned long long automorphism_count(const schur::PcGroup& g) {
  const Table t = Table::of(g);
  return count_isomorphisms(t, t);
}

/// Element-order histogram, centre size and derived-subgroup size.
inline std::vector<int> signature(const Table& t) {
  std::vector<int> sig(static_cast<std::size_t>(t.n + 1), 0);
  for (int x = 0; x < t.order; ++x) {
    int k = 0;
    for (int y = x; y != 0; y = t(y, x)) ++k;
    int e = 0;
    for (int m = std::max(k, 1); m > 1; m /= t.p) ++e;
    ++sig[static_cast<std::size_t>(e)];
  }
  int centre = 0;
  for (int x = 0; x < t.order; ++x) {
    bool central = true;
    for (int y = 0; y < t.order && central; ++y) central = t(x, y) == t(y, x);
    centre += central;
  }
  std::vector<int> comms;
  for (int x = 0; x < t.order; ++x) {
    for (int y = 0; y < t.order; ++y) comms.push_back(t.comm(x, y));
  }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  sig.push_back(centre);
  sig.push_back(static_cast<int>(t.closure(comms).size()));
  return sig;
}

inline bool is_isomorphic(const Table& a, const Table& b) {
  if (a.p != b.p || a.order != b.order) return false;
  if (signature(a) != signature(b)) return false;
  return count_isomorphisms(a, b, true) > 0;
}

inline bool is_isomorphic(const schur::PcGroup& a, const schur::PcGroup& b) {
  if (a.prime() != b.prime() || a.ngens() != b.ngens()) return false;
  return is_isomorphic(Table::of(a), Table::of(b));
}

/// Lower p-central series by direct closure over element lists.
inline int p_class(const Table& t) {
  std::vector<int> cur(static_cast<std::size_t>(t.order));
  for (int x = 0; x < t.order; ++x) cur[static_cast<std::size_t>(x)] = x;
  int cls = 0;
  while (cur.size() > 1) {
    std::vector<int> gens;
    for (int y : cur) {
      gens.push_back(t.power(y, t.p));
      for (int x = 0; x < t.order; ++x) gens.push_back(t.comm(x, y));
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    cur = t.closure(gens);
    ++cls;
  }
  return cls;
}

/// Every consistent presentation with n generators for the prime p.
inline std::vector<schur::PcGroup> all_presentations(int p, int n) {
  using schur::Element;
  struct Slot {
    bool power;
    int i, j;
  };
  std::vector<Slot> slots;
  for (int i = 0; i < n; ++i) slots.push_back({true, i, -1});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) slots.push_back({false, i, j});
  }
  auto free_after = [](const Slot& s) { return s.i + 1; };
  std::vector<int> range(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    int r = 1;
    for (int t = free_after(slots[k]); t < n; ++t) r *= p;
    range[k] = r;
  }
  std::vector<schur::PcGroup> out;
  std::vector<int> choice(slots.size(), 0);
  while (true) {
    std::vector<Element> powers(static_cast<std::size_t>(n));
    std::vector<Element> comms(static_cast<std::size_t>(n * n));
    for (std::size_t k = 0; k < slots.size(); ++k) {
      Element w;
      int x = choice[k];
      for (int t = n - 1; t >= free_after(slots[k]); --t) {
        w[t] = static_cast<std::uint8_t>(x % p);
        x /= p;
      }
      if (slots[k].power) {
        powers[static_cast<std::size_t>(slots[k].i)] = w;
      } else {
        comms[static_cast<std::size_t>(slots[k].i * n + slots[k].j)] = w;
      }
    }
    schur::PcGroup g(p, n, powers, comms);
    if (g.is_consistent()) out.push_back(std::move(g));
    std::size_t pos = slots.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++choice[pos] < range[pos]) {
        done = false;
        break;
      }
      choice[pos] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace oracle
