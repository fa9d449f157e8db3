#include "schur/heuristics.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "schur/recipes.hpp"
#include "schur/schur_quotients.hpp"
#include "schur/sigma.hpp"

namespace schur {

namespace {

double to_double(const Rational& q) { return to_decimal(q).convert_to<double>(); }

Decimal c_inf_product(int p, int factors) {
  Decimal prod = 1;
  Decimal pk = 1;
  for (int i = 1; i <= factors; ++i) {
    pk /= p;
    prod *= 1 - pk;
  }
  return prod;
}

// alias number for sorting, e.g. 5 for "[243,5]"
long long alias_index(const std::string& name) {
  const auto comma = name.find(',');
  if (name.empty() || name.front() != '[' || comma == std::string::npos) return -1;
  try {
    return std::stoll(name.substr(comma + 1));
  } catch (const std::exception&) {
    return -1;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fixed5(double x) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(5) << x;
  return o.str();
}

}  // namespace

Decimal to_decimal(const Rational& q) {
  return Decimal(boost::multiprecision::numerator(q)) / Decimal(boost::multiprecision::denominator(q));
}

Rational c_k(int p, int k) {
  if (k < 0) throw Error("C_k needs k >= 0");
  Rational prod = 1;
  Rational pk = 1;
  for (int i = 1; i <= k; ++i) {
    pk /= p;
    prod *= 1 - pk;
  }
  return prod;
}

CInfinity c_infinity(int p) {
  CInfinity c;
  const Decimal eps("1e-16");
  Decimal pk = 1;
  int k = 0;
  while (pk >= eps) {
    pk /= p;
    ++k;
  }
  c.factors = k;
  c.value = c_inf_product(p, k);
  c.cross_check = c_inf_product(p, 2 * k);
  c.relative_gap = abs((c.value - c.cross_check) / c.cross_check).convert_to<double>();
  return c;
}

const ExpectedEntry* ExpectedModel::find(const std::string& name) const {
  std::string key;
  for (char ch : name) {
    if (ch != ' ') key += ch;
  }
  for (const auto& e : entries) {
    if (e.label == key || e.name == key) return &e;
  }
  return nullptr;
}

ExpectedModel expected_model(const Catalog& cat, int threads) {
  ExpectedModel m;
  const auto& es = cat.entries();
  if (es.empty()) throw Error("empty catalog");
  m.p = es.front().group->prime();
  for (int k = 0; k <= 10; ++k) m.c_values.push_back(c_k(m.p, k));
  m.c_inf = c_infinity(m.p);
  const Rational c2 = c_k(m.p, 2);
  m.mu_sch2 = m.c_inf.value / to_decimal(c2 * c2) / pow(Decimal(m.p), 4);

  const auto d4 = SubgroupRecipe::zassenhaus(4);
  for (const auto& e : es) {
    if (e.aut_order == 0) throw Error("catalog entry " + e.label + " lacks |Aut|");
    ExpectedEntry x;
    x.label = e.label;
    x.name = e.gap_alias ? *e.gap_alias : e.label;
    x.order = e.order;
    x.abelianization = e.abelianization;
    x.m = rel_rank(e.group, d4);
    if (x.m < 0 || x.m > 2) throw Error("relation rank out of range for " + e.label);
    x.aut_order = e.aut_order;
    const auto w = is_sigma_group(e.group);
    if (!w) throw Error("catalog entry " + e.label + " has no sigma");
    x.aut_sigma_order = sigma_automorphism_count(*w, threads);
    Rational p6 = 1;
    for (int i = 0; i < 6; ++i) p6 *= m.p;
    x.mu_cond = c2 * c2 / c_k(m.p, 2 - x.m) * p6 / Rational(x.aut_order);
    x.mu = m.c_inf.value / to_decimal(c_k(m.p, 2 - x.m)) / Decimal(x.aut_sigma_order);
    m.entries.push_back(std::move(x));
  }
  return m;
}

std::vector<ClassifiedRecord> read_labels_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("missing CSV header");
  if (trim(line) != "discriminant,label") throw Error("line 1: expected header 'discriminant,label'");
  std::vector<ClassifiedRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    // labels such as "[243,5]" contain commas; split at the first one only
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(where + "expected 'discriminant,label'");
    ClassifiedRecord r;
    const std::string d = trim(line.substr(0, comma));
    try {
      std::size_t used = 0;
      r.discriminant = std::stoll(d, &used);
      if (used != d.size()) throw std::invalid_argument(d);
    } catch (const std::exception&) {
      throw Error(where + "bad discriminant '" + d + "'");
    }
    r.label = trim(line.substr(comma + 1));
    if (r.label.size() >= 2 && r.label.front() == '"' && r.label.back() == '"') {
      r.label = r.label.substr(1, r.label.size() - 2);
    }
    if (r.label.empty()) throw Error(where + "empty label");
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, long long> read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("missing CSV header");
  if (trim(line) != "label,count") throw Error("line 1: expected header 'label,count'");
  std::map<std::string, long long> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw Error(where + "expected 'label,count'");
    std::string label = trim(line.substr(0, comma));
    if (label.size() >= 2 && label.front() == '"' && label.back() == '"') label = label.substr(1, label.size() - 2);
    if (label.empty()) throw Error(where + "empty label");
    const std::string c = trim(line.substr(comma + 1));
    long long n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(c, &used);
      if (used != c.size() || n < 0) throw std::invalid_argument(c);
    } catch (const std::exception&) {
      throw Error(where + "bad count '" + c + "'");
    }
    out[label] += n;
  }
  return out;
}

void write_labels_csv(std::ostream& out, const std::vector<ClassifiedRecord>& rows) {
  out << "discriminant,label\n";
  for (const auto& r : rows) {
    const bool quote = r.label.find(',') != std::string::npos;
    out << r.discriminant << ',' << (quote ? "\"" : "") << r.label << (quote ? "\"" : "") << '\n';
  }
}

FrequencyReport frequency_report(const std::map<std::string, long long>& counts, const ExpectedModel& model) {
  std::map<const ExpectedEntry*, long long> by_entry;
  for (const auto& e : model.entries) by_entry[&e] = 0;
  long long total = 0;
  for (const auto& [label, n] : counts) {
    const ExpectedEntry* e = model.find(label);
    if (e == nullptr) {
      std::string valid;
      for (const auto& x : model.entries) valid += (valid.empty() ? "" : " ") + x.name;
      throw Error("unknown label '" + label + "'; valid labels: " + valid);
    }
    if (n < 0) throw Error("negative count for " + label);
    by_entry[e] += n;
    total += n;
  }
  if (total == 0) throw Error("N = 0");
  FrequencyReport r;
  r.total = total;
  for (const auto& e : model.entries) {
    FrequencyRow row;
    row.entry = &e;
    row.count = by_entry[&e];
    row.mu_obs = static_cast<double>(row.count) / static_cast<double>(total);
    row.ratio = to_double(Rational(row.count, total) / e.mu_cond);
    r.rows.push_back(row);
  }
  std::stable_sort(r.rows.begin(), r.rows.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
    if (a.entry->order != b.entry->order) return a.entry->order < b.entry->order;
    return alias_index(a.entry->name) < alias_index(b.entry->name);
  });
  return r;
}

FrequencyReport frequency_report(const std::vector<ClassifiedRecord>& records, const ExpectedModel& model) {
  std::map<std::string, long long> counts;
  for (const auto& rec : records) ++counts[rec.label];
  return frequency_report(counts, model);
}

std::string render_markdown(const FrequencyReport& r) {
  std::ostringstream o;
  o << "| H | H_ab | mu_cond | n(H) | mu_obs | ratio |\n";
  o << "|---|---|---:|---:|---:|---:|\n";
  for (const auto& row : r.rows) {
    o << "| " << row.entry->name << " | " << format_invariants(row.entry->abelianization) << " | "
      << fixed5(to_double(row.entry->mu_cond)) << " | " << row.count << " | " << fixed5(row.mu_obs) << " | "
      << fixed5(row.ratio) << " |\n";
  }
  o << "| total | | | " << r.total << " | | |\n";
  return o.str();
}

std::string render_tsv(const FrequencyReport& r) {
  std::ostringstream o;
  o << "H\tH_ab\tmu_cond\tn\tmu_obs\tratio\n";
  for (const auto& row : r.rows) {
    o << row.entry->name << '\t' << format_invariants(row.entry->abelianization) << '\t'
      << fixed5(to_double(row.entry->mu_cond)) << '\t' << row.count << '\t' << fixed5(row.mu_obs) << '\t'
      << fixed5(row.ratio) << '\n';
  }
  return o.str();
}

std::string report_json(const FrequencyReport& r, const ExpectedModel& model) {
  nlohmann::ordered_json j;
  j["N"] = r.total;
  j["C_inf"] = model.c_inf.value.str(20);
  j["C_inf_factors"] = model.c_inf.factors;
  j["mu_inf_Sch2"] = model.mu_sch2.convert_to<double>();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json x;
    x["H"] = row.entry->name;
    x["label"] = row.entry->label;
    x["H_ab"] = format_invariants(row.entry->abelianization);
    x["m"] = row.entry->m;
    x["aut_order"] = row.entry->aut_order;
    x["mu_cond"] = to_double(row.entry->mu_cond);
    x["mu_cond_exact"] = row.entry->mu_cond.str();
    x["n"] = row.count;
    x["mu_obs"] = row.mu_obs;
    x["ratio"] = row.ratio;
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

}  // namespace schur
