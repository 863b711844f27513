#include "tclb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tclb::cli {

std::string csv_field(const nlohmann::ordered_json& value) {
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  return quoted + "\"";
}

std::string render_rows(const nlohmann::ordered_json& rows, Format format) {
  if (format == Format::Json) return rows.dump(2) + "\n";
  std::vector<std::string> keys;
  if (!rows.empty())
    for (const auto& item : rows.front().items()) keys.push_back(item.key());
  std::vector<std::vector<std::string>> table;
  table.push_back(keys);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& key : keys) cells.push_back(row.contains(key) ? csv_field(row[key]) : "");
    table.push_back(cells);
  }
  std::ostringstream os;
  if (format == Format::Csv) {
    for (const auto& cells : table) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::size_t> width(keys.size(), 0);
  for (const auto& cells : table)
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  for (const auto& cells : table) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      line += cells[i];
      if (i + 1 < cells.size()) line += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    os << line << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (!f) throw UsageError("error writing '" + path + "'");
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty())
    out << text;
  else
    write_file(config.out, text);
}

}  // namespace tclb::cli
