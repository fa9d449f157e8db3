#include <doctest.h>

#include <cmath>
#include <sstream>

#include "schur/heuristics.hpp"

using namespace schur;

namespace {

const Catalog& catalog() {
  static const Catalog cat = [] {
    Catalog c = build_catalog({.compute_aut = true, .threads = 4});
    assign_aliases(c, load_alias_table(default_alias_path()));
    return c;
  }();
  return cat;
}

const ExpectedModel& model() {
  static const ExpectedModel m = expected_model(catalog(), 4);
  return m;
}

}  // namespace

TEST_CASE("C_k") {
  CHECK(c_k(3, 0) == 1);
  CHECK(c_k(3, 1) == Rational(2, 3));
  CHECK(c_k(3, 2) == Rational(16, 27));
  for (int k = 0; k < 12; ++k) CHECK(c_k(3, k + 1) < c_k(3, k));
  CHECK_THROWS_AS(c_k(3, -1), Error);
  const auto inf = c_infinity(3);
  CHECK(std::abs(inf.value.convert_to<double>() - 0.56013) < 5e-6);
  CHECK(inf.relative_gap < 1e-15);
  CHECK(inf.factors == 34);
}

TEST_CASE("expected model") {
  const auto& m = model();
  REQUIRE(m.entries.size() == 19);
  CHECK(std::abs(m.mu_sch2.convert_to<double>() - 0.01969) < 1e-4);
  Rational sum = 0;
  for (const auto& e : m.entries) {
    sum += e.mu_cond;
    CHECK(e.aut_order == 9 * e.aut_sigma_order);
    // two routes to mu_cond
    const double via_mu = Decimal(e.mu / m.mu_sch2).convert_to<double>();
    CHECK(std::abs(via_mu - to_decimal(e.mu_cond).convert_to<double>()) < 1e-12);
  }
  CHECK(sum == 1);
  // equal m: mu_cond inversely proportional to |Aut|
  const auto* a = m.find("[243,5]");
  const auto* b = m.find("[243,9]");
  REQUIRE(a != nullptr);
  REQUIRE(b != nullptr);
  CHECK(a->mu_cond * Rational(a->aut_order) == b->mu_cond * Rational(b->aut_order));
  CHECK(m.find("[243, 5]") == a);
  CHECK(m.find("[243,1]") == nullptr);
}

TEST_CASE("frequency report") {
  const auto& m = model();
  const std::map<std::string, long long> counts = {{"[243,5]", 83353}, {"[2187,33]", 46}, {"[243,18]", 378526}};
  const auto r = frequency_report(counts, m);
  CHECK(r.total == 461925);
  REQUIRE(r.rows.size() == 19);
  CHECK(r.rows.front().entry->name == "[243,2]");
  CHECK(r.rows.back().entry->name == "[2187,33]");
  double sum = 0;
  long long n = 0;
  for (const auto& row : r.rows) {
    sum += row.mu_obs;
    n += row.count;
    if (row.entry->name == "[243,5]") {
      CHECK(std::abs(row.mu_obs - 0.18045) < 5e-6);
      CHECK(row.ratio == doctest::Approx(83353.0 / 461925 / (128.0 / 729)).epsilon(1e-12));
    }
  }
  CHECK(n == r.total);
  CHECK(sum == doctest::Approx(1.0));

  const auto md = render_markdown(r);
  CHECK(md.find("| [243,5] | [3,3] | 0.17558 | 83353 | 0.18045 |") != std::string::npos);
  CHECK(render_tsv(r).rfind("H\tH_ab\tmu_cond\tn\tmu_obs\tratio\n", 0) == 0);
  CHECK(report_json(r, m).find("\"mu_cond_exact\": \"128/729\"") != std::string::npos);
}

TEST_CASE("frequency report errors") {
  const auto& m = model();
  try {
    frequency_report(std::vector<ClassifiedRecord>{}, m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "N = 0");
  }
  try {
    frequency_report(std::vector<ClassifiedRecord>{{-3299, "[243,1]"}}, m);
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("unknown label '[243,1]'") != std::string::npos);
    CHECK(what.find("[2187,33]") != std::string::npos);
  }
}

TEST_CASE("labels CSV") {
  std::vector<ClassifiedRecord> rows = {{-3299, "[243,5]"}, {-4027, "d2:1000,0100"}};
  std::stringstream ss;
  write_labels_csv(ss, rows);
  CHECK(ss.str() == "discriminant,label\n-3299,\"[243,5]\"\n-4027,\"d2:1000,0100\"\n");
  const auto back = read_labels_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].label == "[243,5]");
  CHECK(back[1].discriminant == -4027);
  CHECK(back[1].label == "d2:1000,0100");

  auto fails_with = [](const std::string& text, const std::string& what) {
    std::istringstream in(text);
    try {
      read_labels_csv(in);
    } catch (const Error& e) {
      return std::string(e.what()).find(what) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("", "missing CSV header"));
  CHECK(fails_with("d,l\n", "line 1"));
  CHECK(fails_with("discriminant,label\n-3299\n", "line 2"));
  CHECK(fails_with("discriminant,label\n-3299,[243,5]\nx,[243,5]\n", "line 3: bad discriminant"));
  CHECK(fails_with("discriminant,label\n-3299,\n", "line 2: empty label"));
}
