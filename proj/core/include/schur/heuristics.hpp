// Expected frequencies of the G/D_4(G) types and observed-vs-expected reports.
#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "schur/catalog.hpp"

namespace schur {

using Rational = boost::multiprecision::cpp_rational;
using Decimal = boost::multiprecision::cpp_dec_float_50;

Decimal to_decimal(const Rational& q);

/// C_k = prod_{i=1..k} (1 - p^-i), exact.
Rational c_k(int p, int k);

struct CInfinity {
  Decimal value;
  /// Number of factors multiplied before the next one differed from 1 by
  /// less than 1e-16.
  int factors = 0;
  /// The same product taken to twice the depth.
  Decimal cross_check;
  double relative_gap = 0;
};

CInfinity c_infinity(int p);

struct ExpectedEntry {
  std::string label;
  std::string name;  // alias when known, else label
  long long order = 0;
  std::vector<long long> abelianization;
  int m = 0;  // rel_rank with the D_4 recipe
  unsigned long long aut_order = 0;
  unsigned long long aut_sigma_order = 0;
  Rational mu_cond;  // closed form
  Decimal mu;        // C_inf / C_{2-m} / |Aut_sigma|
};

struct ExpectedModel {
  int p = 3;
  std::vector<Rational> c_values;  // C_0 .. C_10
  CInfinity c_inf;
  Decimal mu_sch2;
  std::vector<ExpectedEntry> entries;  // catalog order

  const ExpectedEntry* find(const std::string& name) const;
};

/// Needs aut_order on every entry.
ExpectedModel expected_model(const Catalog& cat, int threads = 1);

struct ClassifiedRecord {
  long long discriminant = 0;
  std::string label;
};

/// CSV with header `discriminant,label`.  Errors name the offending line.
std::vector<ClassifiedRecord> read_labels_csv(std::istream& in);
void write_labels_csv(std::ostream& out, const std::vector<ClassifiedRecord>& rows);

/// Aggregated counts, header `label,count`.
std::map<std::string, long long> read_counts_csv(std::istream& in);

struct FrequencyRow {
  const ExpectedEntry* entry = nullptr;
  long long count = 0;
  double mu_obs = 0;
  double ratio = 0;  // mu_obs / mu_cond
};

struct FrequencyReport {
  long long total = 0;
  /// Sorted by order, then by alias number.
  std::vector<FrequencyRow> rows;
};

/// Labels may be internal labels or aliases.  Throws on unknown labels and
/// on empty input ("N = 0").
FrequencyReport frequency_report(const std::vector<ClassifiedRecord>& records, const ExpectedModel& model);
FrequencyReport frequency_report(const std::map<std::string, long long>& counts, const ExpectedModel& model);

/// Columns H, H_ab, mu_cond, n(H), mu_obs, ratio with five decimals.
std::string render_markdown(const FrequencyReport& r);
std::string render_tsv(const FrequencyReport& r);
/// Full-precision values, plus mu_inf(Sch_2) and C_inf.
std::string report_json(const FrequencyReport& r, const ExpectedModel& model);

}  // namespace schur
