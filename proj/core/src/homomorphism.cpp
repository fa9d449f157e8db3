#include "schur/homomorphism.hpp"

namespace schur {

Element GroupMap::apply(const Element& x) const {
  const PcGroup& t = *target;
  Element r;
  for (int i = 0; i < source->ngens(); ++i) {
    if (x[i] != 0) t.mul_assign(r, t.pow(images[static_cast<std::size_t>(i)], x[i]));
  }
  return r;
}

bool GroupMap::is_valid() const {
  const PcGroup& s = *source;
  const PcGroup& t = *target;
  if (images.size() != static_cast<std::size_t>(s.ngens())) return false;
  for (int i = 0; i < s.ngens(); ++i) {
    const Element& gi = images[static_cast<std::size_t>(i)];
    if (t.pow(gi, s.prime()) != apply(s.power_relation(i))) return false;
    for (int j = 0; j < i; ++j) {
      if (t.comm(gi, images[static_cast<std::size_t>(j)]) != apply(s.commutator_relation(i, j))) return false;
    }
  }
  return true;
}

Subgroup GroupMap::image(const Subgroup& h) const {
  std::vector<Element> xs;
  for (const auto& c : h.canonical_gens()) xs.push_back(apply(c));
  return Subgroup(target, xs);
}

Subgroup GroupMap::image() const { return Subgroup(target, images); }

Subgroup GroupMap::kernel() const {
  Subgroup k = Subgroup::whole(source);
  for (int d = 0; d < target->ngens(); ++d) {
    k = kernel_of_functional(k, [&](const Element& x) { return apply(x)[d]; });
  }
  return k;
}

GroupMap GroupMap::compose(const GroupMap& after) const {
  GroupMap r{source, after.target, {}};
  for (const auto& x : images) r.images.push_back(after.apply(x));
  return r;
}

std::optional<GroupMap> homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> images) {
  if (images.size() != static_cast<std::size_t>(source->ngens())) {
    throw Error("expected one image per polycyclic generator");
  }
  GroupMap m{std::move(source), std::move(target), std::move(images)};
  if (!m.is_valid()) return std::nullopt;
  return m;
}

std::vector<Element> extend_by_definitions(const PcGroup& source, const PcGroup& target,
                                           std::span<const Element> gen_images) {
  if (!source.has_definitions()) throw Error("source presentation has no definitions");
  std::vector<Element> img(static_cast<std::size_t>(source.ngens()));
  std::size_t next = 0;
  for (int k = 0; k < source.ngens(); ++k) {
    const Definition& d = source.definitions()[static_cast<std::size_t>(k)];
    switch (d.kind) {
      case Definition::Kind::generator:
        if (next >= gen_images.size()) throw Error("too few generator images");
        img[static_cast<std::size_t>(k)] = gen_images[next++];
        break;
      case Definition::Kind::power:
        img[static_cast<std::size_t>(k)] = target.pow(img[static_cast<std::size_t>(d.a)], source.prime());
        break;
      case Definition::Kind::commutator:
        img[static_cast<std::size_t>(k)] =
            target.comm(img[static_cast<std::size_t>(d.a)], img[static_cast<std::size_t>(d.b)]);
        break;
      case Definition::Kind::none:
        throw Error("generator without definition");
    }
  }
  return img;
}

GroupMap identity_map(GroupPtr g) {
  GroupMap m{g, g, {}};
  for (int i = 0; i < g->ngens(); ++i) m.images.push_back(g->generator(i));
  return m;
}

Quotient quotient(const Subgroup& n) {
  if (!n.is_normal()) throw Error("subgroup is not normal");
  const GroupPtr& gp = n.owner();
  const PcGroup& g = *gp;
  const SectionCoords sc(Subgroup::whole(gp), n);
  const auto& keep = sc.basis_depths();
  const int m = static_cast<int>(keep.size());
  auto to_q = [&](const Element& x) {
    const auto c = sc.coords(x);
    Element y;
    for (int i = 0; i < m; ++i) y[i] = static_cast<std::uint8_t>(c[static_cast<std::size_t>(i)]);
    return y;
  };
  std::vector<Element> powers(static_cast<std::size_t>(m));
  std::vector<Element> comms(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i) {
    const int di = keep[static_cast<std::size_t>(i)];
    powers[static_cast<std::size_t>(i)] = to_q(g.power_relation(di));
    for (int j = 0; j < i; ++j) {
      comms[static_cast<std::size_t>(i * m + j)] = to_q(g.commutator_relation(di, keep[static_cast<std::size_t>(j)]));
    }
  }
  auto q = share(PcGroup(g.prime(), m, std::move(powers), std::move(comms)));
  GroupMap proj{gp, q, {}};
  for (int i = 0; i < g.ngens(); ++i) proj.images.push_back(to_q(g.generator(i)));
  return {q, proj};
}

}  // namespace schur
