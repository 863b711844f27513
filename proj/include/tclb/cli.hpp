#pragma once

#include "tclb/combinatorics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace tclb::cli {

enum class Format { Json, Csv, Text };
const char* to_string(Format f);
Format parse_format(const std::string& name);

// --help was given; the message is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // "verify-contraction", "verify-expansion", "bounds table",
  // "simulate cache" or "simulate parallel".
  std::string command;
  std::vector<int> s, t, v, n;
  std::vector<long> m, k;  // matrix shapes; an empty list follows n
  std::vector<long> H, p;
  int max_omega = 4;  // spec sweeps drop (s,t,v) with a larger order sum
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0 selects the command default
  // verify-expansion: "auto" is exhaustive up to the column limit.
  std::string mode = "auto";
  std::string out;         // empty writes to the console
  Format format = Format::Json;
  std::vector<std::string> algs;
  std::vector<std::string> bounds;
  std::vector<std::string> grids;
  std::string preset;
  std::uint64_t M = 0;  // per-processor residency cap, 0 for none
  long block = 0;       // 0 derives the block from H
  std::string schedule_file;
  std::string fault;  // test builds only
};

// "2,3,4", "2:4" and mixes such as "1,3:5". An empty string is an empty list.
std::vector<long> parse_list(const std::string& text, const std::string& flag);

// args excludes the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

// Every (s,t,v) from the configured lists with s+t+v <= max_omega, crossed
// with every n. Throws UsageError when the result is empty.
std::vector<ContractionSpec> spec_grid(const RunConfig& config);

int cmd_verify_contraction(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify_expansion(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bounds_table(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate_cache(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate_parallel(const RunConfig& config, std::ostream& out, std::ostream& err);

// Exit codes: 0 pass, 1 violation or validation error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---- Report rendering -----------------------------------------------------

// Rows are objects with scalar members, all sharing the first row's keys.
std::string render_rows(const nlohmann::ordered_json& rows, Format format);
std::string csv_field(const nlohmann::ordered_json& value);
// Writes to config.out, or to out when no path is set.
void emit(const RunConfig& config, const std::string& text, std::ostream& out);
void write_file(const std::string& path, const std::string& text);

}  // namespace tclb::cli
