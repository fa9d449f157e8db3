// schur-sigma: catalog, classification, descendants, powerfulness and reports.
#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "schur/automorphisms.hpp"
#include "schur/catalog.hpp"
#include "schur/covers.hpp"
#include "schur/filtrations.hpp"
#include "schur/heuristics.hpp"
#include "schur/invariants.hpp"
#include "schur/schur_quotients.hpp"
#include "schur/sigma.hpp"

namespace {

using namespace schur;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInconclusive = 2;

struct Config {
  int p = 3;
  int threads = 0;
  int max_class = 12;
  double time_budget = 0;
  bool verbose = false;
  std::string in, out, group, type, subgroup = "D2", format = "md";
  int step = 1;
};

void log(const Config& cfg, const std::string& msg) {
  if (cfg.verbose) std::cerr << msg << '\n';
}

Catalog load_catalog(const Config& cfg, bool with_aut) {
  log(cfg, "building catalog");
  Catalog cat = build_catalog({.compute_aut = with_aut, .threads = cfg.threads});
  const auto path = default_alias_path();
  log(cfg, "alias table " + path);
  const auto rep = assign_aliases(cat, load_alias_table(path));
  for (const auto& u : rep.unresolved) std::cerr << "warning: no alias for " << u << '\n';
  return cat;
}

std::string display_name(const CatalogEntry& e) { return e.gap_alias ? *e.gap_alias : e.label; }

GroupPtr read_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return share(PcGroup::from_text(ss.str()));
}

/// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void check_output_path(const std::string& path) {
  if (path.empty()) return;
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty() && !std::filesystem::is_directory(dir)) throw Error("output directory does not exist: " + dir.string());
}

int run_catalog(const Config& cfg) {
  check_output_path(cfg.out);
  const Catalog cat = load_catalog(cfg, true);
  Output out(cfg.out);
  out.stream() << catalog_json(cat) << '\n';
  return kExitOk;
}

int run_classify(const Config& cfg) {
  check_output_path(cfg.out);
  std::ifstream in(cfg.in);
  if (!in) throw Error("cannot open " + cfg.in);
  const auto records = read_massey_csv(in);
  const Catalog cat = load_catalog(cfg, false);
  std::vector<ClassifiedRecord> rows;
  for (const auto& r : records) rows.push_back({r.discriminant, display_name(classify_record(cat, r))});
  Output out(cfg.out);
  write_labels_csv(out.stream(), rows);
  log(cfg, "classified " + std::to_string(rows.size()) + " records");
  return kExitOk;
}

int run_ipad(const Config& cfg) {
  const auto g = read_group(cfg.group);
  if (generator_rank(g) != 2) throw Error("ipad needs a two-generated group");
  std::cout << format_ipad(ipad(g)) << '\n';
  return kExitOk;
}

int run_descendants(const Config& cfg) {
  check_output_path(cfg.out);
  const auto g = read_group(cfg.group);
  const auto ds = immediate_descendants(g, cfg.step, cfg.threads);
  Output out(cfg.out);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i > 0) out.stream() << '\n';
    out.stream() << ds[i]->to_text();
  }
  std::cerr << ds.size() << " immediate descendants of order " << cfg.p << '^' << g->ngens() + cfg.step << '\n';
  return kExitOk;
}

int run_powerful(const Config& cfg) {
  const Catalog cat = load_catalog(cfg, false);
  const auto* e = cat.find(cfg.type);
  if (e == nullptr) {
    std::vector<const CatalogEntry*> types;
    for (const auto& x : cat.entries()) {
      if (x.order == 243) types.push_back(&x);
    }
    std::ranges::sort(types, {}, [](const CatalogEntry* x) {
      const auto name = display_name(*x);
      const auto comma = name.find(',');
      return comma == std::string::npos ? 0 : std::atoi(name.c_str() + comma + 1);
    });
    std::string valid;
    for (const auto* x : types) valid += " " + display_name(*x);
    throw Error("unknown type '" + cfg.type + "'; valid types:" + valid);
  }
  const auto recipe = parse_recipe(cfg.subgroup);
  RecursionOptions opt;
  opt.max_class = cfg.max_class;
  opt.threads = cfg.threads;
  opt.time_budget = cfg.time_budget;
  auto rep = powerfulness_recursion(e->group, recipe, opt);
  rep.type = display_name(*e);
  std::cout << report_json(rep) << '\n';
  return rep.verdict == Verdict::inconclusive ? kExitInconclusive : kExitOk;
}

int run_report(const Config& cfg) {
  check_output_path(cfg.out);
  std::ifstream in(cfg.in);
  if (!in) throw Error("cannot open " + cfg.in);
  std::string header;
  std::getline(in, header);
  in.seekg(0);
  const bool aggregated = header.rfind("label,count", 0) == 0;
  std::map<std::string, long long> counts;
  if (aggregated) {
    counts = read_counts_csv(in);
  } else {
    for (const auto& r : read_labels_csv(in)) ++counts[r.label];
  }
  const Catalog cat = load_catalog(cfg, true);
  const auto model = expected_model(cat, cfg.threads);
  const auto rep = frequency_report(counts, model);
  Output out(cfg.out);
  if (cfg.format == "json") {
    out.stream() << report_json(rep, model) << '\n';
  } else if (cfg.format == "tsv") {
    out.stream() << render_tsv(rep);
  } else {
    out.stream() << render_markdown(rep);
  }
  return kExitOk;
}

int run_selfcheck(const Config& cfg) {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << '\n';
    if (!ok) ++failures;
  };
  const Catalog cat = load_catalog(cfg, true);
  int per_order[3] = {0, 0, 0};
  for (const auto& e : cat.entries()) per_order[e.order == 243 ? 0 : e.order == 729 ? 1 : 2]++;
  check(per_order[0] == 13 && per_order[1] == 5 && per_order[2] == 1, "catalog has 13 + 5 + 1 entries");
  check(cat.orbit_counts().at(1) == 5 && cat.orbit_counts().at(2) == 13, "5 and 13 orbits of lines and planes");
  bool dims = true, index = true, m_ok = true, aliases = true;
  const auto d4 = SubgroupRecipe::zassenhaus(4);
  for (const auto& e : cat.entries()) {
    const auto g = zassenhaus_chain(e.group).graded_dims;
    dims = dims && g.size() >= 3 && g[0] == 2 && g[1] == 1 && g[2] == 4 - e.subspace_dim &&
           zassenhaus_term(e.group, 4).is_trivial();
    const auto w = is_sigma_group(e.group);
    index = index && w && e.aut_order == 9 * sigma_automorphism_count(*w, cfg.threads);
    m_ok = m_ok && rel_rank(e.group, d4) == e.subspace_dim;
    aliases = aliases && e.gap_alias.has_value();
  }
  check(dims, "graded dimensions (2,1,4-dim U) and D_4 = 1");
  check(index, "[Aut : Aut_sigma] = 9 for every entry");
  check(m_ok, "relation rank over F/D_4 equals the subspace dimension");
  check(aliases, "every entry has an alias");
  bool agree = true;
  for (int code = 0; code < 6561; code += 41) {
    MasseyRecord r;
    r.discriminant = -3299;
    int c = code;
    for (auto& x : r.e) {
      x = c % 3;
      c /= 3;
    }
    agree = agree && is_isomorphic(construct_from_record(r), classify_record(cat, r).group);
  }
  check(agree, "classify_record matches direct construction on sampled records");
  const auto model = expected_model(cat, cfg.threads);
  Rational sum = 0;
  for (const auto& e : model.entries) sum += e.mu_cond;
  check(sum == 1, "mu_cond sums to 1");
  return failures == 0 ? kExitOk : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur sigma-groups: catalog, classification and powerfulness"};
  app.require_subcommand(1);
  Config cfg;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("-p,--prime", cfg.p, "prime (only 3 is supported)")->check(CLI::IsMember({3}));
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", cfg.verbose, "progress on stderr");

  auto* catalog = app.add_subcommand("catalog", "build the 19 types and export JSON");
  catalog->add_option("--out", cfg.out, "output file");

  auto* classify = app.add_subcommand("classify", "classify Massey records");
  classify->add_option("--in", cfg.in, "MasseyRecord CSV")->required()->check(CLI::ExistingFile);
  classify->add_option("--out", cfg.out, "labels CSV");

  auto* ipad_cmd = app.add_subcommand("ipad", "index-p abelianization data");
  ipad_cmd->add_option("--group", cfg.group, "pc presentation file")->required()->check(CLI::ExistingFile);

  auto* desc = app.add_subcommand("descendants", "immediate descendants of a p-group");
  desc->add_option("--group", cfg.group, "pc presentation file")->required()->check(CLI::ExistingFile);
  desc->add_option("--step", cfg.step, "step size")->check(CLI::PositiveNumber);
  desc->add_option("--out", cfg.out, "output file");

  auto* powerful = app.add_subcommand("powerful", "decide whether E(G) is powerful over a type");
  powerful->add_option("--type", cfg.type, "type, e.g. [243,5]")->required();
  powerful->add_option("--subgroup", cfg.subgroup, "recipe E")->check(CLI::IsMember({"D2", "D3", "D4"}));
  powerful->add_option("--max-class", cfg.max_class, "largest level explored")->check(CLI::Range(3, 40));
  powerful->add_option("--time-budget", cfg.time_budget, "seconds, 0 for none")->check(CLI::NonNegativeNumber);

  auto* report = app.add_subcommand("report", "observed vs expected frequencies");
  report->add_option("--in", cfg.in, "labels CSV (discriminant,label) or counts CSV (label,count)")->required()->check(CLI::ExistingFile);
  report->add_option("--out", cfg.out, "output file");
  report->add_option("--format", cfg.format, "md, tsv or json")->check(CLI::IsMember({"md", "tsv", "json"}));

  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*catalog) return run_catalog(cfg);
    if (*classify) return run_classify(cfg);
    if (*ipad_cmd) return run_ipad(cfg);
    if (*desc) return run_descendants(cfg);
    if (*powerful) return run_powerful(cfg);
    if (*report) return run_report(cfg);
    if (*selfcheck) return run_selfcheck(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
