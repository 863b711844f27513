#include "tclb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace tclb::cli {

const char* to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "?";
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw UsageError("unknown format '" + name + "' (expected json, csv or text)");
}

namespace {

long parse_long(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw UsageError("--" + flag + ": '" + text + "' is not an integer");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<std::string> parse_names(const std::string& text) {
  std::vector<std::string> out;
  for (auto& part : split(text, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::vector<int> to_ints(const std::vector<long>& xs, const std::string& flag, long lo) {
  std::vector<int> out;
  for (long x : xs) {
    if (x < lo || x > 1000000) throw UsageError("--" + flag + ": value " + std::to_string(x) + " out of range");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<long> positive(std::vector<long> xs, const std::string& flag) {
  for (long x : xs)
    if (x < 1) throw UsageError("--" + flag + ": value " + std::to_string(x) + " must be >= 1");
  return xs;
}

}  // namespace

std::vector<long> parse_list(const std::string& text, const std::string& flag) {
  std::vector<long> out;
  if (text.find_first_not_of(' ') == std::string::npos) return out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw UsageError("--" + flag + ": empty list item in '" + text + "'");
    const auto colon = part.find(':');
    if (colon == std::string::npos) {
      out.push_back(parse_long(part, flag));
      continue;
    }
    const long lo = parse_long(part.substr(0, colon), flag);
    const long hi = parse_long(part.substr(colon + 1), flag);
    if (hi < lo) throw UsageError("--" + flag + ": empty range '" + part + "'");
    if (hi - lo > 100000) throw UsageError("--" + flag + ": range '" + part + "' is too long");
    for (long x = lo; x <= hi; ++x) out.push_back(x);
  }
  return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Communication bounds toolkit for symmetric tensor contractions", "tclb"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.require_subcommand(1);

  // Options live on the root so the config file uses plain keys; the
  // subcommands fall through to them.
  std::map<std::string, std::string> values;
  const std::vector<std::pair<std::string, std::string>> options = {
      {"s", "uncontracted A modes (list)"},
      {"t", "uncontracted B modes (list)"},
      {"v", "contracted modes (list)"},
      {"n", "index dimension (list)"},
      {"m", "matrix rows for mm (list)"},
      {"k", "inner matrix dimension for mm (list)"},
      {"H", "cache size (list)"},
      {"p", "processor count (list)"},
      {"max-omega", "largest s+t+v in spec sweeps"},
      {"seed", "base seed"},
      {"trials", "seeds per cell or sampled subsets per instance"},
      {"mode", "verify-expansion subsets: auto, exhaustive or sampled"},
      {"out", "output file, or directory for verify-expansion"},
      {"format", "json, csv or text"},
      {"alg", "algorithms: mm, nonsym, direct, sympres (list)"},
      {"bound", "expansion bound families: mm, direct, direct-mv, sympres (list)"},
      {"grid", "processor grids: 1d, 2d, 3d (list)"},
      {"preset", "named configuration, e.g. paper-table"},
      {"M", "per-processor memory cap, 0 for none"},
      {"block", "cache block size, 0 derives it from H"},
      {"schedule", "schedule file to simulate instead of a reference schedule"},
  };
  for (const auto& [name, help] : options) app.add_option("--" + name, values[name], help);
#ifdef TCLB_TEST_HOOKS
  app.add_option("--inject-fault", values["fault"], "psi-sign-flip");
#endif

  std::string command;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 const std::string& full) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    if (!full.empty()) sub->callback([&command, full] { command = full; });
    return sub;
  };
  add(&app, "verify-contraction", "check the algorithms against the oracle", "verify-contraction");
  add(&app, "verify-expansion", "check expansion bounds on bilinear encodings", "verify-expansion");
  CLI::App* bounds = add(&app, "bounds", "communication lower bounds", "");
  bounds->require_subcommand(1);
  add(bounds, "table", "asymptotic and numeric bound table", "bounds table");
  CLI::App* sim = add(&app, "simulate", "run reference schedules", "");
  sim->require_subcommand(1);
  add(sim, "cache", "sequential two-level memory", "simulate cache");
  add(sim, "parallel", "distributed memory", "simulate parallel");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig c;
  c.command = command;
  auto given = [&](const std::string& name) { return app.get_option("--" + name)->count() > 0; };
  auto list = [&](const std::string& name, std::vector<long> fallback) {
    return given(name) ? parse_list(values[name], name) : fallback;
  };
  c.s = to_ints(list("s", {0, 1, 2, 3, 4}), "s", 0);
  c.t = to_ints(list("t", {0, 1, 2, 3, 4}), "t", 0);
  c.v = to_ints(list("v", {0, 1, 2, 3, 4}), "v", 0);
  c.n = to_ints(positive(list("n", {}), "n"), "n", 1);
  c.m = positive(list("m", {}), "m");
  c.k = positive(list("k", {}), "k");
  c.H = positive(list("H", {}), "H");
  c.p = positive(list("p", {}), "p");
  for (const auto* name : {"s", "t", "v", "n", "m", "k", "H", "p"})
    if (given(name) && values[name].find_first_not_of(' ') == std::string::npos)
      throw UsageError(std::string("--") + name + ": empty list");
  if (given("max-omega")) c.max_omega = static_cast<int>(parse_long(values["max-omega"], "max-omega"));
  if (given("seed")) {
    const long seed = parse_long(values["seed"], "seed");
    if (seed < 0) throw UsageError("--seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (given("trials")) {
    const long trials = parse_long(values["trials"], "trials");
    if (trials < 1) throw UsageError("--trials must be >= 1");
    c.trials = static_cast<std::size_t>(trials);
  }
  if (given("mode")) {
    c.mode = values["mode"];
    if (c.mode != "auto" && c.mode != "exhaustive" && c.mode != "sampled")
      throw UsageError("unknown mode '" + c.mode + "' (expected auto, exhaustive or sampled)");
  }
  c.out = values["out"];
  if (given("format")) c.format = parse_format(values["format"]);
  c.algs = parse_names(values["alg"]);
  c.bounds = parse_names(values["bound"]);
  c.grids = parse_names(values["grid"]);
  if (given("alg") && c.algs.empty()) throw UsageError("--alg: empty list");
  if (given("bound") && c.bounds.empty()) throw UsageError("--bound: empty list");
  if (given("grid") && c.grids.empty()) throw UsageError("--grid: empty list");
  c.preset = values["preset"];
  if (!c.preset.empty() && c.preset != "paper-table")
    throw UsageError("unknown preset '" + c.preset + "' (expected paper-table)");
  if (given("M")) {
    const long M = parse_long(values["M"], "M");
    if (M < 0) throw UsageError("--M must be non-negative");
    c.M = static_cast<std::uint64_t>(M);
  }
  if (given("block")) {
    c.block = parse_long(values["block"], "block");
    if (c.block < 0) throw UsageError("--block must be non-negative");
  }
  c.schedule_file = values["schedule"];
  c.fault = values["fault"];
  if (!c.fault.empty() && c.fault != "psi-sign-flip")
    throw UsageError("unknown fault '" + c.fault + "' (expected psi-sign-flip)");
  return c;
}

std::vector<ContractionSpec> spec_grid(const RunConfig& config) {
  std::vector<ContractionSpec> out;
  const std::set<int> S(config.s.begin(), config.s.end()), T(config.t.begin(), config.t.end()),
      V(config.v.begin(), config.v.end());
  std::vector<int> ns = config.n;
  std::vector<int> seen;
  for (int n : ns) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    for (int s : S)
      for (int t : T)
        for (int v : V)
          if (s + t + v <= config.max_omega) out.push_back({n, s, t, v});
  }
  if (out.empty()) throw UsageError("the spec list is empty (check --s --t --v --n --max-omega)");
  return out;
}

}  // namespace tclb::cli
