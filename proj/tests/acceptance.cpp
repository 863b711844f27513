#include "tclb/cli.hpp"
#include "tclb/expansion.hpp"
#include "tclb/random.hpp"
#include "tclb/sim.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace tclb;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

// Reports written by one full run of the tool; criterion 10 compares two runs.
struct SuiteRun {
  fs::path dir;
  std::map<std::string, int> exit_codes;
};

SuiteRun run_suite(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  SuiteRun run{dir, {}};
  const std::string seed = "20240601";
  run.exit_codes["verify-contraction"] =
      invoke({"verify-contraction", "--n", "2,3,4", "--trials", "5", "--seed", seed, "--out",
              (dir / "contraction.json").string()});
  run.exit_codes["verify-expansion"] =
      invoke({"verify-expansion", "--n", "2,3", "--trials", "2000", "--seed", seed, "--out", (dir / "expansion").string()});
  run.exit_codes["bounds"] =
      invoke({"bounds", "table", "--preset", "paper-table", "--out", (dir / "table.json").string()});
  run.exit_codes["cache"] = invoke({"simulate", "cache", "--alg", "mm", "--m", "8,12,16", "--n", "8,12,16", "--k",
                                    "8,12,16", "--H", "12,27,48", "--out", (dir / "cache.json").string()});
  run.exit_codes["parallel"] = invoke({"simulate", "parallel", "--alg", "mm", "--grid", "1d,2d,3d", "--p", "2,4,8",
                                       "--m", "8,16", "--n", "8,16", "--k", "8,16", "--out",
                                       (dir / "parallel.json").string()});
  return run;
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

// ---- 1-3: contraction sweep ---------------------------------------------

void contraction_criteria(const SuiteRun& run, Outcome& c1, Outcome& c2, Outcome& c3) {
  if (run.exit_codes.at("verify-contraction") != 0) {
    for (auto* o : {&c1, &c2, &c3}) fail(*o, "verify-contraction exited nonzero");
  }
  const json report = load(run.dir / "contraction.json");
  std::set<std::tuple<int, int, int, int>> specs;
  std::map<std::string, std::size_t> per_alg;
  std::size_t irreducible_checked = 0;
  for (const auto& cell : report["cells"]) {
    const std::string alg = cell["alg"];
    const std::string name = alg + " n=" + cell["n"].dump() + " (" + cell["s"].dump() + "," + cell["t"].dump() + "," +
                             cell["v"].dump() + ") trial " + cell["trial"].dump();
    specs.insert({cell["n"].get<int>(), cell["s"].get<int>(), cell["t"].get<int>(), cell["v"].get<int>()});
    ++per_alg[alg];
    if (!cell["match"].get<bool>()) fail(c1, name + " differs from the oracle");
    if (cell["products"] != cell["expected_products"]) fail(c2, name + " product count mismatch");
    if (!cell["encoding_match"].get<bool>()) fail(c3, name + " encoding output differs");
    if (cell["trial"] == 0) {
      ++irreducible_checked;
      if (!cell["irreducible"].get<bool>()) fail(c3, name + " encoding is reducible");
    }
    if (!cell["error"].get<std::string>().empty()) fail(c1, name + ": " + cell["error"].get<std::string>());
  }
  // 35 shapes with s+t+v <= 4, three n, five seeds.
  if (specs.size() != 35 * 3) fail(c1, "sweep covers " + std::to_string(specs.size()) + " (n, spec) pairs");
  for (const char* alg : {"nonsym", "direct", "sympres"})
    if (per_alg[alg] != 35 * 3 * 5) fail(c1, std::string(alg) + " ran " + std::to_string(per_alg[alg]) + " cells");
  if (c1.pass) c1.detail = std::to_string(report["cells"].size()) + " cells exact";
  if (c2.pass) c2.detail = "all product counts equal the formulas";
  if (c3.pass) c3.detail = std::to_string(irreducible_checked) + " encodings irreducible, all outputs equal";
}

// ---- 4: expansion bounds --------------------------------------------------

Outcome expansion_criterion(const SuiteRun& run) {
  Outcome o;
  if (run.exit_codes.at("verify-expansion") != 0) fail(o, "verify-expansion exited nonzero");
  std::map<std::string, std::size_t> sampled;
  std::set<std::string> exhaustive;
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(run.dir / "expansion")) {
    const json r = load(entry.path());
    ++files;
    const std::string name = entry.path().filename().string();
    if (!r["passed"].get<bool>()) fail(o, name + " has violations");
    const bool small = r["rank_cols"].get<std::size_t>() <= kMaxExhaustiveColumns;
    if (small != (r["mode"] == "exhaustive")) fail(o, name + " used the wrong mode");
    if (r["mode"] == "exhaustive") {
      exhaustive.insert(name);
      if (r["subsets_checked"].get<std::size_t>() != (std::size_t{1} << r["rank_cols"].get<std::size_t>()))
        fail(o, name + " did not enumerate every subset");
    } else {
      if (r["subsets_checked"] != 2000) fail(o, name + " sampled fewer than 2000 subsets");
      ++sampled[r["bound_family"].get<std::string>()];
    }
  }
  for (const char* required : {"nonsym_n2_s1t1v0_mm.json", "direct_n2_s1t0v1_direct.json",
                                "direct_n2_s1t1v0_direct.json", "sympres_n2_s1t1v1_sympres.json",
                                "sympres_n2_s1t0v1_sympres.json"})
    if (!exhaustive.count(required)) fail(o, std::string("missing exhaustive instance ") + required);
  for (const char* family : {"mm", "direct", "direct-mv", "sympres"})
    if (sampled[family] < 10) fail(o, std::string(family) + " has " + std::to_string(sampled[family]) + " sampled instances");
  if (o.pass) {
    std::ostringstream os;
    os << exhaustive.size() << " exhaustive, sampled mm/direct/direct-mv/sympres = " << sampled["mm"] << "/"
       << sampled["direct"] << "/" << sampled["direct-mv"] << "/" << sampled["sympres"] << " of " << files;
    o.detail = os.str();
  }
  return o;
}

// ---- 5: Loomis-Whitney ----------------------------------------------------

Outcome loomis_whitney_criterion() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& [m, r] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}}) {
    const int k = m == 4 ? 3 : 4;
    const std::size_t cube = ipow_u64(static_cast<std::uint64_t>(k), static_cast<unsigned>(m));
    Rng rng(derive_seed(5, static_cast<std::uint64_t>(m * 8 + r)));
    for (int i = 0; i < 500; ++i) {
      std::vector<IndexTuple> V;
      for (std::size_t flat : rng.subset_by_size(cube)) V.push_back(flat_unindex(flat, k, m));
      if (!loomis_whitney_check(V, r).passed())
        fail(o, "failure at m=" + std::to_string(m) + " r=" + std::to_string(r) + " instance " + std::to_string(i));
      ++checks;
    }
    std::vector<IndexTuple> full;
    for (std::size_t flat = 0; flat < cube; ++flat) full.push_back(flat_unindex(flat, k, m));
    const auto tight = loomis_whitney_check(full, r);
    if (!tight.passed() || !tight.product_tight || !tight.union_tight)
      fail(o, "full cube not tight at m=" + std::to_string(m) + " r=" + std::to_string(r));
  }
  if (o.pass) o.detail = std::to_string(checks) + " random instances, 5 tight cubes";
  return o;
}

// ---- 6: DAG expansion ---------------------------------------------------

ExpansionBound family_bound(BoundFamily f, const ContractionSpec& spec) {
  auto pw = [&](int e) { return BigInt(ipow_u64(static_cast<std::uint64_t>(spec.n), static_cast<unsigned>(e))); };
  switch (f) {
    case BoundFamily::MM: return bound_mm(pw(spec.s), pw(spec.t), pw(spec.v));
    case BoundFamily::Direct: return bound_direct(spec);
    case BoundFamily::DirectMV: return bound_direct_mv(spec);
    case BoundFamily::Sympres: return bound_sympres(spec);
  }
  return bound_direct(spec);
}

Outcome dag_criterion(const SuiteRun& run) {
  Outcome o;
  std::size_t encodings = 0, subsets = 0;
  for (const auto& entry : fs::directory_iterator(run.dir / "expansion")) {
    const json r = load(entry.path());
    if (r["mode"] != "exhaustive") continue;
    const ContractionSpec spec{r["n"].get<int>(), r["s"].get<int>(), r["t"].get<int>(), r["v"].get<int>()};
    const AlgorithmId alg = parse_algorithm(r["alg"].get<std::string>());
    const BoundFamily f = parse_bound_family(r["bound_family"].get<std::string>());
    const auto dag = build_dag_naive(build_encoding(alg, spec));
    const auto report = check_dag_expansion(dag, family_bound(f, spec), 200, derive_seed(6, encodings));
    subsets += report.subsets_checked;
    ++encodings;
    if (!report.passed() || report.subsets_checked != 200) fail(o, entry.path().filename().string() + " violated");
  }
  if (o.pass) o.detail = std::to_string(encodings) + " encodings, " + std::to_string(subsets) + " subsets";
  return o;
}

// ---- 7: summary table ---------------------------------------------------

Outcome table_criterion(const SuiteRun& run) {
  Outcome o;
  if (run.exit_codes.at("bounds") != 0) fail(o, "bounds table exited nonzero");
  // Columns: s, t, v, then flop counts, sequential and parallel bounds per algorithm.
  const std::vector<std::vector<std::string>> expected = {
      {"1", "1", "0", "n^{2}", "n^{2}", "n^{2}/2", "n^{2}", "n^{2}", "n/p^{1/2}", "n/p^{1/2}", "n/p^{1/2}"},
      {"2", "1", "0", "n^{3}", "n^{3}/2", "n^{3}/6", "n^{3}", "n^{3}", "n", "n^{2}/p^{2/3}", "n^{2}/p^{2/3}"},
      {"3", "1", "0", "n^{4}", "n^{4}/6", "n^{4}/24", "n^{4}", "n^{4}", "n", "n^{3}/p^{3/4}", "n^{3}/p^{3/4}"},
      {"2", "2", "0", "n^{4}", "n^{4}/4", "n^{4}/24", "n^{4}", "n^{4}", "n^{2}/p^{1/2}", "n^{2}/p^{1/2}",
       "n^{2}/p^{1/2}"},
      {"1", "1", "1", "n^{3}", "n^{3}", "n^{3}/6", "n^{3}/H^{1/2}", "n^{3}/H^{1/2}", "n^{2}/p^{2/3}", "n^{2}/p^{2/3}",
       "n^{2}/p^{2/3}"},
      {"2", "1", "1", "n^{4}", "n^{4}/2", "n^{4}/24", "n^{4}/H^{1/2}", "n^{4}/H^{1/3}", "n^{2}", "n^{2}",
       "n^{3}/p^{3/4}"},
      {"2", "2", "1", "n^{5}", "n^{5}/4", "n^{5}/120", "n^{5}/H^{1/2}", "n^{5}/H^{1/4}", "n^{3}/p^{1/2}",
       "n^{3}/p^{1/2}", "n^{4}/p^{4/5}"},
      {"2", "2", "2", "n^{6}", "n^{6}/8", "n^{6}/720", "n^{6}/H^{1/2}", "n^{6}/H^{1/2}", "n^{4}/p^{2/3}",
       "n^{4}/p^{2/3}", "n^{4}/p^{2/3}"},
  };
  const json table = load(run.dir / "table.json");
  const json& rows = table["asymptotic"];
  if (rows.size() != expected.size()) fail(o, "table has " + std::to_string(rows.size()) + " rows");
  std::size_t cells = 0;
  for (std::size_t i = 0; i < std::min(rows.size(), expected.size()); ++i) {
    std::size_t c = 0;
    for (const auto& [key, value] : rows[i].items()) {
      const std::string got = value.is_string() ? value.get<std::string>() : value.dump();
      if (c < expected[i].size() && got != expected[i][c])
        fail(o, "row " + std::to_string(i) + " " + key + ": " + got + " != " + expected[i][c]);
      ++c;
      ++cells;
    }
  }
  if (o.pass) o.detail = std::to_string(rows.size()) + " rows, " + std::to_string(cells) + " cells match";
  return o;
}

// ---- 8: simulator vs bounds -----------------------------------------------

Outcome simulator_criterion(const SuiteRun& run) {
  Outcome o;
  if (run.exit_codes.at("cache") != 0) fail(o, "simulate cache exited nonzero");
  if (run.exit_codes.at("parallel") != 0) fail(o, "simulate parallel exited nonzero");
  double worst_cache = 0, worst_3d = 0;
  std::size_t cache_runs = 0, par_runs = 0;
  const json cache = load(run.dir / "cache.json");
  const json parallel = load(run.dir / "parallel.json");
  for (const auto& r : cache["reports"]) {
    ++cache_runs;
    if (!r["meets_bound"].get<bool>()) fail(o, r["schedule"].get<std::string>() + " below bound");
    worst_cache = std::max(worst_cache, r["bound_ratio"].get<double>());
  }
  if (cache_runs != 81) fail(o, "cache grid ran " + std::to_string(cache_runs) + " schedules");
  for (const auto& r : parallel["reports"]) {
    ++par_runs;
    if (!r.contains("meets_bound")) {
      fail(o, r["schedule"].get<std::string>() + " has no bound attached");
      continue;
    }
    if (!r["meets_bound"].get<bool>()) fail(o, r["schedule"].get<std::string>() + " below bound");
    if (r["grid"] == "3d") worst_3d = std::max(worst_3d, r["bound_ratio"].get<double>());
  }
  if (worst_cache > 8) fail(o, "blocked mm ratio " + std::to_string(worst_cache));
  if (worst_3d > 8) fail(o, "3d mm ratio " + std::to_string(worst_3d));

  // Symmetric schedules against their own bounds.
  std::size_t sym_runs = 0;
  for (int n : {4, 6, 8})
    for (const ContractionSpec shape : {ContractionSpec{0, 1, 1, 1}, ContractionSpec{0, 2, 1, 0},
                                        ContractionSpec{0, 2, 1, 1}})
      for (std::uint64_t H : {27u, 48u}) {
        ContractionSpec spec = shape;
        spec.n = n;
        const BigInt h(static_cast<unsigned long>(H));
        try {
          auto direct = simulate_cache(schedule_blocked_direct(spec, block_for_cache(H)), H);
          attach_bound(direct, q_direct(spec, h));
          if (!direct.meets_bound) fail(o, "direct " + describe(spec) + " below bound");
          const long b = sympres_block_for_cache(spec, H);
          if (b > 0) {
            const auto schedule = schedule_sympres_seq(spec, b);
            auto sym = simulate_cache(schedule, H);
            attach_bound(sym, q_sympres(spec, h));
            if (!schedule.reuses_partial_sums && !sym.meets_bound) fail(o, "sympres " + describe(spec) + " below bound");
            ++sym_runs;
          }
          ++sym_runs;
        } catch (const std::exception& e) {
          fail(o, describe(spec) + ": " + e.what());
        }
      }
  if (o.pass) {
    std::ostringstream os;
    os << cache_runs << " cache, " << par_runs << " parallel, " << sym_runs
       << " symmetric schedules; worst ratios blocked " << worst_cache << ", 3d " << worst_3d;
    o.detail = os.str();
  }
  return o;
}

// ---- 9: simplex maxima ----------------------------------------------------

Outcome simplex_criterion() {
  Outcome o;
  const std::vector<ExpansionBound> exact = {bound_mm(4, 4, 4), bound_direct({4, 1, 1, 1}), bound_direct({4, 2, 1, 1}),
                                             bound_direct({4, 2, 2, 0})};
  const std::vector<ExpansionBound> upper = {bound_sympres({4, 1, 1, 1}), bound_sympres({4, 2, 1, 1}),
                                             bound_sympres({4, 2, 1, 0})};
  for (long H = 1; H <= 20; ++H) {
    for (const auto& b : exact)
      if (max_over_simplex(b, H) != max_over_simplex_search(b, H)) fail(o, b.describe() + " H=" + std::to_string(H));
    for (const auto& b : upper)
      if (max_over_simplex(b, H) < max_over_simplex_search(b, H)) fail(o, b.describe() + " H=" + std::to_string(H));
  }
  if (o.pass) o.detail = "H = 1..20, 4 exact and 3 upper-form families";
  return o;
}

// ---- 10: determinism ------------------------------------------------------

Outcome determinism_criterion(const SuiteRun& a, const SuiteRun& b) {
  Outcome o;
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a.dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a.dir);
    if (!fs::exists(b.dir / rel)) {
      fail(o, rel.string() + " missing from the second run");
      continue;
    }
    if (slurp(entry.path()) != slurp(b.dir / rel)) fail(o, rel.string() + " differs");
    ++files;
  }
  if (o.pass) o.detail = std::to_string(files) + " report files byte-identical";
  return o;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path root = fs::temp_directory_path() / "tclb_acceptance";
  const SuiteRun first = run_suite(root / "run1");

  std::vector<std::pair<std::string, Outcome>> results;
  Outcome c1, c2, c3;
  contraction_criteria(first, c1, c2, c3);
  results.push_back({"algorithm equivalence", c1});
  results.push_back({"rank counts", c2});
  results.push_back({"bilinear encoding equivalence", c3});
  results.push_back({"expansion bounds hold", expansion_criterion(first)});
  results.push_back({"Loomis-Whitney", loomis_whitney_criterion()});
  results.push_back({"DAG expansion", dag_criterion(first)});
  results.push_back({"summary table reproduction", table_criterion(first)});
  results.push_back({"simulator vs bounds", simulator_criterion(first)});
  results.push_back({"simplex maximum cross-check", simplex_criterion()});
  const SuiteRun second = run_suite(root / "run2");
  results.push_back({"determinism", determinism_criterion(first, second)});

  bool all = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, o] = results[i];
    all = all && o.pass;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << ": " << name << " (" << o.detail
              << ")\n";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "total " << seconds << " s\n";
  return all ? 0 : 1;
}
