#include "tclb/cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace tclb;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tclb_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

// Rows of the csv block that follows "# <section>".
std::vector<std::map<std::string, std::string>> csv_section(const std::string& text, const std::string& section) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line) && line != "# " + section) {
  }
  std::vector<std::map<std::string, std::string>> rows;
  std::vector<std::string> header;
  while (std::getline(is, line) && !line.empty() && line[0] != '#') {
    const auto fields = split_csv_line(line);
    if (header.empty()) {
      header = fields;
      continue;
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) row[header[i]] = fields[i];
    rows.push_back(row);
  }
  return rows;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

TEST(ParseList, ListsAndRanges) {
  EXPECT_EQ(cli::parse_list("2,3,4", "--n"), (std::vector<long>{2, 3, 4}));
  EXPECT_EQ(cli::parse_list("2:4", "--n"), (std::vector<long>{2, 3, 4}));
  EXPECT_EQ(cli::parse_list("1,3:5", "--n"), (std::vector<long>{1, 3, 4, 5}));
  EXPECT_TRUE(cli::parse_list("", "--n").empty());
  EXPECT_THROW(cli::parse_list("4:2", "--n"), UsageError);
  EXPECT_THROW(cli::parse_list("x", "--n"), UsageError);
}

TEST(ExitCodes, HelpAndUsage) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  const auto empty = invoke({"verify-contraction", "--n", ""});
  EXPECT_EQ(empty.code, 2);
  EXPECT_NE(empty.err.find("usage error"), std::string::npos);
  EXPECT_EQ(invoke({"verify-expansion", "--bound", "bogus"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "table", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "table", "--preset", "other"}).code, 2);
  EXPECT_EQ(invoke({"verify-contraction", "--inject-fault", "bit-rot"}).code, 2);
}

TEST(VerifyContraction, PassesAndReportsCells) {
  const auto r = invoke({"verify-contraction", "--n", "2,3", "--s", "1", "--t", "0:1", "--v", "1", "--trials", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out);
  EXPECT_TRUE(report["passed"].get<bool>());
  // 3 algorithms x 2 n x 2 t x 2 trials.
  EXPECT_EQ(report["cells_checked"].get<int>(), 24);
  for (const auto& cell : report["cells"]) {
    EXPECT_TRUE(cell["match"].get<bool>());
    EXPECT_EQ(cell["products"], cell["expected_products"]);
  }
}

TEST(VerifyContraction, InjectedFaultFailsAndNamesTheSpec) {
  const auto r = invoke({"verify-contraction", "--n", "2", "--s", "1", "--t", "1", "--v", "1", "--trials", "1",
                         "--inject-fault", "psi-sign-flip"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("FAIL direct n=2 (s,t,v)=(1,1,1)"), std::string::npos) << r.err;
  EXPECT_FALSE(json::parse(r.out)["passed"].get<bool>());
}

TEST(VerifyExpansion, WritesOneReportPerInstance) {
  const auto dir = scratch("expansion");
  const auto r = invoke({"verify-expansion", "--alg", "nonsym,sympres", "--n", "2", "--s", "1", "--t", "1", "--v",
                         "1", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mm = json::parse(slurp(dir / "nonsym_n2_s1t1v1_mm.json"));
  EXPECT_EQ(mm["mode"], "exhaustive");
  EXPECT_EQ(mm["subsets_checked"].get<int>(), 256);
  EXPECT_TRUE(fs::exists(dir / "sympres_n2_s1t1v1_sympres.json"));
  const auto sampled = invoke({"verify-expansion", "--alg", "direct", "--n", "3", "--s", "1", "--t", "1", "--v", "1",
                               "--mode", "sampled", "--trials", "50", "--out", dir.string()});
  ASSERT_EQ(sampled.code, 0) << sampled.err;
  EXPECT_EQ(json::parse(slurp(dir / "direct_n3_s1t1v1_direct.json"))["subsets_checked"].get<int>(), 50);
  EXPECT_EQ(invoke({"verify-expansion", "--alg", "nonsym", "--bound", "sympres", "--s", "1", "--t", "1", "--v", "1",
                    "--out", dir.string()})
                .code,
            2);
}

TEST(BoundsTable, PresetMatchesPublishedCell) {
  const auto r = invoke({"bounds", "table", "--preset", "paper-table"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out);
  bool found = false;
  for (const auto& row : report["asymptotic"])
    if (row["s"] == 2 && row["t"] == 2 && row["v"] == 1) {
      EXPECT_EQ(row["W_sympres"], "n^{4}/p^{4/5}");
      EXPECT_EQ(row["Q_sympres"], "n^{5}/H^{1/4}");
      found = true;
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(report["asymptotic"].size(), 8u);
}

TEST(BoundsTable, NumericMatrixColumn) {
  const auto r = invoke({"bounds", "table", "--m", "4", "--n", "4", "--k", "4", "--H", "4", "--s", "1", "--t", "1",
                         "--v", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["mm"][0]["q_mm"], "64");
}

TEST(BoundsTable, CsvAndJsonCarryIdenticalValues) {
  const std::vector<std::string> base = {"bounds", "table", "--preset", "paper-table", "--n", "8,16", "--H", "16",
                                         "--p", "4"};
  auto with = [&](const std::string& fmt) {
    auto args = base;
    args.insert(args.end(), {"--format", fmt});
    return invoke(args);
  };
  const auto j = with("json"), c = with("csv");
  ASSERT_EQ(j.code, 0);
  ASSERT_EQ(c.code, 0);
  const auto report = json::parse(j.out);
  for (const std::string section : {"asymptotic", "numeric"}) {
    const auto rows = csv_section(c.out, section);
    ASSERT_EQ(rows.size(), report[section].size()) << section;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [key, value] : report[section][i].items())
        EXPECT_EQ(rows[i].at(key), scalar_text(value)) << section << " " << key;
  }
  EXPECT_EQ(with("text").code, 0);
}

TEST(Simulate, CacheReportWithinRatio) {
  const auto r = invoke({"simulate", "cache", "--alg", "mm", "--m", "8", "--n", "8", "--k", "8", "--H", "27"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out);
  ASSERT_EQ(report["reports"].size(), 1u);
  const double ratio = report["reports"][0]["bound_ratio"].get<double>();
  EXPECT_GE(ratio, 1.0);
  EXPECT_LE(ratio, 8.0);
  const auto sym = invoke({"simulate", "cache", "--alg", "direct,sympres", "--n", "4", "--s", "1", "--t", "1", "--v",
                           "1", "--H", "27"});
  EXPECT_EQ(sym.code, 0) << sym.err;
}

TEST(Simulate, ParallelTrafficAndDivisibility) {
  const auto r = invoke({"simulate", "parallel", "--alg", "mm", "--grid", "3d", "--p", "8", "--m", "8", "--n", "8",
                         "--k", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(r.out);
  const auto& procs = report["reports"][0]["per_processor"];
  ASSERT_EQ(procs.size(), 8u);
  for (const auto& row : procs) EXPECT_EQ(row["traffic"], row["sent"].get<int>() + row["received"].get<int>());
  const auto bad = invoke({"simulate", "parallel", "--alg", "mm", "--grid", "3d", "--p", "7", "--m", "8", "--n", "8",
                           "--k", "8"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("divisible"), std::string::npos);
  const auto text = invoke({"simulate", "parallel", "--grid", "2d", "--p", "4", "--m", "8", "--n", "8", "--k", "8",
                            "--format", "text"});
  EXPECT_NE(text.out.find("# processors"), std::string::npos);
}

TEST(Simulate, ScheduleFileRoundTripsThroughCli) {
  const auto dir = scratch("schedule");
  const auto file = dir / "bad.sched";
  std::ofstream(file) << "NAME broken\nIN 1\nIN 2\nOUT 3\nL 1\nC 3 <- 1 2 MUL\nS 3\n";
  const auto r = invoke({"simulate", "cache", "--schedule", file.string(), "--H", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("operand-not-cached"), std::string::npos) << r.err;
}

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> args = {"verify-contraction", "--n", "2", "--trials", "2", "--seed", "7",
                                         "--max-omega", "3"};
  const auto a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other[6] = "8";
  EXPECT_NE(invoke(other).out, a.out);
}

TEST(Config, FileValuesWithFlagsWinning) {
  const auto dir = scratch("config");
  const auto file = dir / "run.cfg";
  std::ofstream(file) << "n = 3\ntrials = 1\ns = 1\nt = 1\nv = 1\n";
  const auto from_file = json::parse(invoke({"verify-contraction", "--config", file.string()}).out);
  EXPECT_EQ(from_file["cells"][0]["n"], 3);
  EXPECT_EQ(from_file["trials"], 1);
  const auto flagged = json::parse(invoke({"verify-contraction", "--config", file.string(), "--n", "2"}).out);
  EXPECT_EQ(flagged["cells"][0]["n"], 2);
  EXPECT_EQ(flagged["trials"], 1);
}

TEST(Output, OutFlagWritesFile) {
  const auto dir = scratch("out");
  const auto file = dir / "table.csv";
  const auto r = invoke({"bounds", "table", "--preset", "paper-table", "--format", "csv", "--out", file.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(slurp(file).find("2,2,1,n^{5},n^{5}/4,n^{5}/120"), std::string::npos);
}
