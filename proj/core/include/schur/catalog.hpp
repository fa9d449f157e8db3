// The nineteen groups G/D_4(G) for two-generated weak Schur sigma-groups at
// p = 3, Massey relator records, and external small-group aliases.
#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schur/invariants.hpp"
#include "schur/linalg.hpp"
#include "schur/subgroup.hpp"

namespace schur {

/// F_2 / D_4(F_2) for p = 3 with the basis
/// (a1^3, a2^3, [[a1,a2],a1], [[a1,a2],a2]) of gr_3 = D_3.
struct FreeD4Quotient {
  GroupPtr group;
  Element a1, a2;
  std::array<Element, 4> basis;
  Subgroup d3;

  /// Coordinates of x in D_3 with respect to `basis`.
  std::vector<int> gr3_coords(const Element& x) const;
  Element from_gr3(std::span<const int> v) const;

 private:
  friend const FreeD4Quotient& free_d4_quotient();
  linalg::Matrix to_basis_;  // canonical coordinates -> basis coordinates
  std::shared_ptr<const SectionCoords> section_;
};

/// Built once from iterated p-covers of C3 x C3.
const FreeD4Quotient& free_d4_quotient();

/// Action on gr_3 induced by a1 -> a1^A00 a2^A01, a2 -> a1^A10 a2^A11.  Row k
/// is the image of basis vector k; subspaces transform as U -> U * M.
linalg::Matrix induced_action(const linalg::Matrix& a);
/// All 48 elements of GL_2(F_3) with their induced matrices.
const std::vector<std::pair<linalg::Matrix, linalg::Matrix>>& induced_action_table();

/// Least RREF matrix (row-major entries compared lexicographically) in the
/// orbit of the subspace spanned by the rows of u.
linalg::Matrix canonical_subspace(const linalg::Matrix& u);
std::string subspace_label(const linalg::Matrix& rref);

struct CatalogEntry {
  std::string label;
  GroupPtr group;
  long long order = 0;
  int subspace_dim = 0;
  linalg::Matrix orbit_rep;
  int orbit_size = 0;
  std::vector<long long> abelianization;
  unsigned long long aut_order = 0;
  IPAD ipad;
  std::optional<std::string> gap_alias;  // unset when unresolved
  std::string alias_note;                // how the alias was settled
};

struct CatalogOptions {
  bool compute_aut = true;
  int threads = 1;
};

struct AliasRecord;
struct AliasReport;

class Catalog {
 public:
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry& at(const std::string& label) const;
  const CatalogEntry* find(const std::string& label_or_alias) const;
  /// Entry for the subspace spanned by the rows of u (any spanning set).
  const CatalogEntry& classify_subspace(const linalg::Matrix& u) const;
  /// Counts of subspaces and orbits per dimension.
  const std::map<int, int>& subspace_counts() const { return subspace_counts_; }
  const std::map<int, int>& orbit_counts() const { return orbit_counts_; }

 private:
  friend Catalog build_catalog(const CatalogOptions&);
  friend AliasReport assign_aliases(Catalog&, const std::vector<AliasRecord>&);
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> by_label_;
  std::map<int, int> subspace_counts_, orbit_counts_;
};

/// Quotients of F_2/D_4(F_2) by all subspaces of gr_3 of dimension <= 2,
/// one entry per orbit, ordered by group order and then by label.
Catalog build_catalog(const CatalogOptions& opt = {});

struct MasseyRecord {
  long long discriminant = 0;
  /// e111, e222, e112, e221 for the first relator, then for the second.
  std::array<int, 8> e{};

  /// Relator l (0 or 1) in gr_3 coordinates: (-e111, -e222, -e112, e221).
  std::vector<int> relator_coords(int l) const;
};

/// The relators f_1, f_2 as elements of F_2/D_4(F_2).
std::array<Element, 2> relator_elements(const MasseyRecord& rec);
/// Direct construction: F_2/D_4(F_2) modulo the normal closure of f_1, f_2.
GroupPtr construct_from_record(const MasseyRecord& rec);
const CatalogEntry& classify_record(const Catalog& cat, const MasseyRecord& rec);

/// CSV with header discriminant,e111_1,e222_1,e112_1,e221_1,e111_2,e222_2,e112_2,e221_2.
/// Errors name the offending line.
std::vector<MasseyRecord> read_massey_csv(std::istream& in);
void write_massey_csv(std::ostream& out, const std::vector<MasseyRecord>& rows);

// Aliases -------------------------------------------------------------------

struct AliasRecord {
  std::string alias;
  long long order = 0;
  std::vector<long long> abelianization;
  unsigned long long aut_order = 0;
  std::string ipad;
  std::string presentation;  // optional reference group
};

/// Path from SCHUR_SIGMA_DATA, else the installed or source data file.
std::string default_alias_path();
std::vector<AliasRecord> load_alias_table(const std::string& path);

struct AliasReport {
  /// Groups of entries (labels) sharing a fingerprint in the alias table.
  std::vector<std::vector<std::string>> collisions;
  std::vector<std::string> unresolved;
};

/// Match entries to alias records by fingerprint (order, abelianization,
/// |Aut|, IPAD).  Shared fingerprints are reported and settled only by an
/// isomorphism with the record's reference presentation.
AliasReport assign_aliases(Catalog& cat, const std::vector<AliasRecord>& table);

/// Catalog export: JSON array of (label, order, abelianization, ipad,
/// gap_alias, orbit_rep) plus aut_order and subspace_dim.
std::string catalog_json(const Catalog& cat);

/// Parse "[3,3]; [3,3,3], [9,3]^3" into an IPAD with sorted invariants.
IPAD parse_ipad(const std::string& text);

}  // namespace schur
