#include "schur/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "schur/automorphisms.hpp"
#include "schur/covers.hpp"
#include "schur/filtrations.hpp"
#include "schur/homomorphism.hpp"

namespace schur {

namespace {

constexpr int kP = 3;

}  // namespace

std::vector<int> FreeD4Quotient::gr3_coords(const Element& x) const {
  if (!d3.contains(x)) throw Error("element is not in D_3");
  return linalg::mul(section_->coords(x), to_basis_, kP);
}

Element FreeD4Quotient::from_gr3(std::span<const int> v) const {
  const PcGroup& g = *group;
  Element x;
  for (std::size_t k = 0; k < 4; ++k) {
    if (v[k] != 0) g.mul_assign(x, g.pow(basis[k], v[k]));
  }
  return x;
}

const FreeD4Quotient& free_d4_quotient() {
  static const FreeD4Quotient q = [] {
    auto base = share(PcGroup(kP, 2, std::vector<Element>(2), std::vector<Element>(4)));
    auto f2 = p_cover(base).cover;  // F/P_2
    auto f3 = p_cover(f2).cover;    // F/P_3
    const Quotient fq = quotient(zassenhaus_term(f3, 4));
    FreeD4Quotient r;
    r.group = fq.group;
    const PcGroup& g = *r.group;
    r.a1 = fq.projection.apply(f3->generator(0));
    r.a2 = fq.projection.apply(f3->generator(1));
    const Element c = g.comm(r.a1, r.a2);
    r.basis = {g.pow(r.a1, kP), g.pow(r.a2, kP), g.comm(c, r.a1), g.comm(c, r.a2)};
    r.d3 = zassenhaus_term(r.group, 3);
    if (g.ngens() != 7 || r.d3.size_log() != 4 || !zassenhaus_term(r.group, 4).is_trivial()) {
      throw Error("unexpected shape of F/D4(F)");
    }
    r.section_ = std::make_shared<SectionCoords>(r.d3, Subgroup(r.group));
    std::vector<std::vector<int>> rows;
    for (const auto& b : r.basis) rows.push_back(r.section_->coords(b));
    auto inv = linalg::inverse(linalg::Matrix::from_rows(rows, 4), kP);
    if (!inv) throw Error("gr_3 basis is not independent");
    r.to_basis_ = *inv;
    return r;
  }();
  return q;
}

linalg::Matrix induced_action(const linalg::Matrix& a) {
  const FreeD4Quotient& f = free_d4_quotient();
  const PcGroup& g = *f.group;
  const Element b1 = g.mul(g.pow(f.a1, a(0, 0)), g.pow(f.a2, a(0, 1)));
  const Element b2 = g.mul(g.pow(f.a1, a(1, 0)), g.pow(f.a2, a(1, 1)));
  const Element c = g.comm(b1, b2);
  const Element img[4] = {g.pow(b1, kP), g.pow(b2, kP), g.comm(c, b1), g.comm(c, b2)};
  std::vector<std::vector<int>> rows;
  for (const auto& x : img) rows.push_back(f.gr3_coords(x));
  return linalg::Matrix::from_rows(rows, 4);
}

const std::vector<std::pair<linalg::Matrix, linalg::Matrix>>& induced_action_table() {
  static const std::vector<std::pair<linalg::Matrix, linalg::Matrix>> table = [] {
    std::vector<std::pair<linalg::Matrix, linalg::Matrix>> t;
    linalg::for_each_invertible(2, kP, [&](const linalg::Matrix& a) {
      t.emplace_back(a, induced_action(a));
      return true;
    });
    return t;
  }();
  return table;
}

linalg::Matrix canonical_subspace(const linalg::Matrix& u) {
  linalg::Matrix base = u;
  linalg::rref(base, kP);
  if (base.rows == 0) return linalg::Matrix(0, u.cols);
  std::optional<linalg::Matrix> best;
  for (const auto& [a, m] : induced_action_table()) {
    linalg::Matrix w = linalg::mul(base, m, kP);
    linalg::rref(w, kP);
    if (!best || w.a < best->a) best = w;
  }
  return *best;
}

std::string subspace_label(const linalg::Matrix& rref) {
  std::string s = "d" + std::to_string(rref.rows);
  for (int r = 0; r < rref.rows; ++r) {
    s += r == 0 ? ":" : ",";
    for (int c = 0; c < rref.cols; ++c) s += static_cast<char>('0' + rref(r, c));
  }
  return s;
}

const CatalogEntry& Catalog::at(const std::string& label) const {
  const auto it = by_label_.find(label);
  if (it == by_label_.end()) throw Error("unknown catalog label " + label);
  return entries_[it->second];
}

const CatalogEntry* Catalog::find(const std::string& label_or_alias) const {
  const auto it = by_label_.find(label_or_alias);
  if (it != by_label_.end()) return &entries_[it->second];
  std::string key;
  for (char ch : label_or_alias) {
    if (ch != ' ') key += ch;
  }
  for (const auto& e : entries_) {
    if (e.gap_alias && *e.gap_alias == key) return &e;
  }
  return nullptr;
}

const CatalogEntry& Catalog::classify_subspace(const linalg::Matrix& u) const {
  return at(subspace_label(canonical_subspace(u)));
}

Catalog build_catalog(const CatalogOptions& opt) {
  const FreeD4Quotient& f = free_d4_quotient();
  Catalog cat;
  std::map<std::string, std::pair<linalg::Matrix, int>> orbits;
  for (int k = 0; k <= 2; ++k) {
    linalg::for_each_subspace(4, k, kP, [&](const linalg::Matrix& u) {
      ++cat.subspace_counts_[k];
      const linalg::Matrix c = canonical_subspace(u);
      auto [it, fresh] = orbits.try_emplace(subspace_label(c), c, 0);
      ++it->second.second;
      if (fresh) ++cat.orbit_counts_[k];
      return true;
    });
  }
  for (const auto& [label, rep] : orbits) {
    CatalogEntry e;
    e.label = label;
    e.orbit_rep = rep.first;
    e.orbit_size = rep.second;
    e.subspace_dim = rep.first.rows;
    std::vector<Element> gens;
    for (int r = 0; r < rep.first.rows; ++r) gens.push_back(f.from_gr3(rep.first.row(r)));
    e.group = quotient(subgroup(f.group, gens)).group;
    e.order = 1;
    for (int i = 0; i < e.group->ngens(); ++i) e.order *= kP;
    e.abelianization = abelian_invariants(e.group);
    e.ipad = ipad(e.group);
    if (opt.compute_aut) e.aut_order = automorphism_count(e.group, kAutOrderBound, opt.threads);
    cat.entries_.push_back(std::move(e));
  }
  std::stable_sort(cat.entries_.begin(), cat.entries_.end(),
                   [](const CatalogEntry& x, const CatalogEntry& y) { return x.order < y.order; });
  for (std::size_t i = 0; i < cat.entries_.size(); ++i) cat.by_label_[cat.entries_[i].label] = i;
  return cat;
}

std::vector<int> MasseyRecord::relator_coords(int l) const {
  const auto at = [&](int k) { return e[static_cast<std::size_t>(4 * l + k)]; };
  return {linalg::mod(-at(0), kP), linalg::mod(-at(1), kP), linalg::mod(-at(2), kP), linalg::mod(at(3), kP)};
}

std::array<Element, 2> relator_elements(const MasseyRecord& rec) {
  const FreeD4Quotient& f = free_d4_quotient();
  const PcGroup& g = *f.group;
  const Element c = g.comm(f.a1, f.a2);
  const Element c1 = g.comm(c, f.a1);
  const Element c2 = g.comm(c, f.a2);
  std::array<Element, 2> out;
  for (int l = 0; l < 2; ++l) {
    const auto at = [&](int k) { return rec.e[static_cast<std::size_t>(4 * l + k)]; };
    Element x = g.pow(f.a1, -kP * at(0));
    x = g.mul(x, g.pow(f.a2, -kP * at(1)));
    x = g.mul(x, g.pow(c1, -at(2)));
    x = g.mul(x, g.pow(c2, at(3)));
    out[static_cast<std::size_t>(l)] = x;
  }
  return out;
}

GroupPtr construct_from_record(const MasseyRecord& rec) {
  const FreeD4Quotient& f = free_d4_quotient();
  const auto rel = relator_elements(rec);
  return quotient(normal_closure(f.group, rel)).group;
}

const CatalogEntry& classify_record(const Catalog& cat, const MasseyRecord& rec) {
  return cat.classify_subspace(linalg::Matrix::from_rows({rec.relator_coords(0), rec.relator_coords(1)}, 4));
}

namespace {

const char* const kMasseyHeader = "discriminant,e111_1,e222_1,e112_1,e221_1,e111_2,e222_2,e112_2,e221_2";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<MasseyRecord> read_massey_csv(std::istream& in) {
  std::vector<MasseyRecord> rows;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw Error("line " + std::to_string(lineno) + ": " + what);
    };
    if (!header) {
      std::string compact;
      for (char ch : line) {
        if (ch != ' ') compact += ch;
      }
      if (compact != kMasseyHeader) fail(std::string("expected header ") + kMasseyHeader);
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (cells.size() != 9) fail("expected 9 fields, found " + std::to_string(cells.size()));
    MasseyRecord r;
    try {
      std::size_t used = 0;
      r.discriminant = std::stoll(cells[0], &used);
      if (used != cells[0].size()) fail("bad discriminant '" + cells[0] + "'");
    } catch (const std::logic_error&) {
      fail("bad discriminant '" + cells[0] + "'");
    }
    if (r.discriminant >= 0) fail("discriminant must be negative");
    const long long m4 = ((r.discriminant % 4) + 4) % 4;
    if (m4 != 0 && m4 != 1) fail("discriminant must be 0 or 1 mod 4");
    for (int k = 0; k < 8; ++k) {
      const std::string& c = cells[static_cast<std::size_t>(k + 1)];
      if (c.size() != 1 || c[0] < '0' || c[0] > '2') fail("exponent '" + c + "' not in {0,1,2}");
      r.e[static_cast<std::size_t>(k)] = c[0] - '0';
    }
    rows.push_back(r);
  }
  if (!header) throw Error("missing CSV header");
  return rows;
}

void write_massey_csv(std::ostream& out, const std::vector<MasseyRecord>& rows) {
  out << kMasseyHeader << '\n';
  for (const auto& r : rows) {
    out << r.discriminant;
    for (int v : r.e) out << ',' << v;
    out << '\n';
  }
}

std::string default_alias_path() {
  if (const char* env = std::getenv("SCHUR_SIGMA_DATA"); env && *env) return env;
#ifdef SCHUR_DATA_INSTALL_DIR
  {
    const std::string p = std::string(SCHUR_DATA_INSTALL_DIR) + "/aliases.json";
    if (std::filesystem::exists(p)) return p;
  }
#endif
#ifdef SCHUR_DATA_SOURCE_DIR
  return std::string(SCHUR_DATA_SOURCE_DIR) + "/aliases.json";
#else
  return "aliases.json";
#endif
}

std::vector<AliasRecord> load_alias_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open alias table " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error("alias table " + path + ": " + ex.what());
  }
  std::vector<AliasRecord> out;
  for (const auto& e : doc.at("entries")) {
    AliasRecord r;
    r.alias = e.at("alias").get<std::string>();
    r.order = e.at("order").get<long long>();
    r.abelianization = e.at("abelianization").get<std::vector<long long>>();
    r.aut_order = e.value("aut_order", 0ULL);
    r.ipad = e.at("ipad").get<std::string>();
    r.presentation = e.value("presentation", std::string());
    out.push_back(std::move(r));
  }
  return out;
}

AliasReport assign_aliases(Catalog& cat, const std::vector<AliasRecord>& table) {
  AliasReport rep;
  auto& entries = cat.entries_;
  auto fingerprint_match = [](const CatalogEntry& e, const AliasRecord& r) {
    if (e.order != r.order || e.abelianization != r.abelianization) return false;
    if (e.aut_order != 0 && r.aut_order != 0 && e.aut_order != r.aut_order) return false;
    return parse_ipad(r.ipad) == e.ipad;
  };
  std::vector<std::vector<std::size_t>> candidates(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (fingerprint_match(entries[i], table[k])) candidates[i].push_back(k);
    }
  }
  std::vector<bool> reported(entries.size(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (reported[i]) continue;
    std::vector<std::string> same{entries[i].label};
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (candidates[j] == candidates[i] && !candidates[i].empty()) {
        same.push_back(entries[j].label);
        reported[j] = true;
      }
    }
    if (same.size() > 1) rep.collisions.push_back(same);
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CatalogEntry& e = entries[i];
    e.gap_alias.reset();
    std::vector<std::size_t> verified;
    bool unverifiable = false;
    for (std::size_t k : candidates[i]) {
      const AliasRecord& r = table[k];
      if (r.presentation.empty()) {
        unverifiable = true;
        continue;
      }
      if (is_isomorphic(e.group, share(PcGroup::from_text(r.presentation)))) verified.push_back(k);
    }
    if (verified.size() == 1) {
      e.gap_alias = table[verified[0]].alias;
      e.alias_note = candidates[i].size() == 1 ? "fingerprint, isomorphism verified"
                                               : "shared fingerprint, settled by isomorphism";
    } else if (verified.empty() && unverifiable && candidates[i].size() == 1) {
      e.gap_alias = table[candidates[i][0]].alias;
      e.alias_note = "fingerprint only";
    } else {
      e.alias_note = candidates[i].empty() ? "no fingerprint match" : "ambiguous";
      rep.unresolved.push_back(e.label);
    }
  }
  return rep;
}

std::string catalog_json(const Catalog& cat) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : cat.entries()) {
    nlohmann::ordered_json j;
    j["label"] = e.label;
    j["order"] = e.order;
    j["abelianization"] = e.abelianization;
    j["ipad"] = format_ipad(e.ipad);
    j["gap_alias"] = e.gap_alias ? nlohmann::ordered_json(*e.gap_alias) : nlohmann::ordered_json("ambiguous");
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < e.orbit_rep.rows; ++r) rows.push_back(e.orbit_rep.row(r));
    j["orbit_rep"] = rows;
    j["subspace_dim"] = e.subspace_dim;
    j["orbit_size"] = e.orbit_size;
    j["aut_order"] = e.aut_order;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

IPAD parse_ipad(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '$') s += ch;
  }
  std::size_t pos = 0;
  auto fail = [&] { throw Error("bad IPAD '" + text + "'"); };
  auto list = [&] {
    if (pos >= s.size() || s[pos] != '[') fail();
    ++pos;
    std::vector<long long> v;
    while (pos < s.size() && s[pos] != ']') {
      std::size_t used = 0;
      v.push_back(std::stoll(s.substr(pos), &used));
      pos += used;
      if (pos < s.size() && s[pos] == ',') ++pos;
    }
    if (pos >= s.size()) fail();
    ++pos;
    std::sort(v.begin(), v.end());
    return v;
  };
  IPAD x;
  x.top = list();
  if (pos >= s.size() || s[pos] != ';') fail();
  ++pos;
  while (pos < s.size()) {
    auto v = list();
    int mult = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::size_t used = 0;
      mult = std::stoi(s.substr(pos), &used);
      pos += used;
    }
    for (int k = 0; k < mult; ++k) x.subquotients.push_back(v);
    if (pos < s.size()) {
      if (s[pos] != ',') fail();
      ++pos;
    }
  }
  std::sort(x.subquotients.begin(), x.subquotients.end());
  return x;
}

}  // namespace schur
