#include "tclb/cli.hpp"
#include "tclb/bounds.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace tclb::cli {

namespace {

using json = nlohmann::ordered_json;

json asymptotic_row(const AsymptoticRecord& r) {
  json j;
  j["s"] = r.s;
  j["t"] = r.t;
  j["v"] = r.v;
  j["F_nonsym"] = render(r.f_nonsym, "n");
  j["F_direct"] = render(r.f_direct, "n");
  j["F_sympres"] = render(r.f_sympres, "n");
  j["Q_nonsym_direct"] = render(r.q_nonsym_direct, "H");
  j["Q_sympres"] = render(r.q_sympres, "H");
  j["W_nonsym"] = render(r.w_nonsym, "p");
  j["W_direct"] = render(r.w_direct, "p");
  j["W_sympres"] = render(r.w_sympres, "p");
  return j;
}

void put(json& row, const std::string& key, const BoundValue& b) {
  row[key] = b.value.str();
  row[key + "_approx"] = b.value.decimal();
}

BigInt big(long x) { return BigInt(x); }

}  // namespace

int cmd_bounds_table(const RunConfig& in, std::ostream& out, std::ostream&) {
  RunConfig config = in;
  const bool preset = config.preset == "paper-table";
  const bool mm_only = !config.m.empty() || !config.k.empty() ||
                       (config.algs.size() == 1 && config.algs.front() == "mm");
  if (config.n.empty()) config.n = {8};
  if (config.H.empty()) config.H = {16};
  if (config.p.empty()) config.p = {4};

  json asymptotic = json::array();
  json numeric = json::array();
  json mm = json::array();

  if (mm_only && !preset) {
    const std::vector<long> ns(config.n.begin(), config.n.end());
    const std::vector<long> ms = config.m.empty() ? ns : config.m;
    const std::vector<long> ks = config.k.empty() ? ns : config.k;
    for (long m : ms)
      for (long n : ns)
        for (long k : ks)
          for (long H : config.H)
            for (long p : config.p) {
              json row;
              row["m"] = m;
              row["n"] = n;
              row["k"] = k;
              row["H"] = H;
              row["p"] = p;
              put(row, "q_mm", q_mm(big(m), big(n), big(k), big(H)));
              put(row, "w_mm", w_mm(big(m), big(n), big(k), big(p)));
              mm.push_back(row);
            }
  } else {
    std::vector<ContractionSpec> specs;
    if (preset) {
      for (const auto& shape : table_specs())
        for (int n : config.n) specs.push_back({n, shape.s, shape.t, shape.v});
    } else {
      specs = spec_grid(config);
    }
    std::vector<ContractionSpec> shapes;
    for (const auto& spec : specs) {
      ContractionSpec shape = spec;
      shape.n = 2;
      if (std::find(shapes.begin(), shapes.end(), shape) == shapes.end()) shapes.push_back(shape);
    }
    std::vector<ContractionSpec> shown;
    for (const auto& shape : shapes)
      if (shape.omega() > 0) shown.push_back(shape);
    for (const auto& r : asymptotic_table(shown)) asymptotic.push_back(asymptotic_row(r));

    for (const auto& spec : specs)
      for (long H : config.H)
        for (long p : config.p) {
          const bool degenerate = classify(spec) == SpecClass::Degenerate;
          json row;
          row["s"] = spec.s;
          row["t"] = spec.t;
          row["v"] = spec.v;
          row["n"] = spec.n;
          row["H"] = H;
          row["p"] = p;
          put(row, "q_nonsym", q_nonsym(spec, big(H)));
          put(row, "q_direct", q_direct(spec, big(H)));
          put(row, "q_sympres", degenerate ? q_direct(spec, big(H)) : q_sympres(spec, big(H)));
          put(row, "w_nonsym", w_nonsym(spec, big(p)));
          put(row, "w_direct", w_direct(spec, big(p)));
          put(row, "w_sympres", degenerate ? w_direct(spec, big(p)) : w_sympres(spec, big(p)));
          numeric.push_back(row);
        }
  }

  std::string text;
  if (config.format == Format::Json) {
    json report;
    report["command"] = "bounds table";
    if (preset) report["preset"] = config.preset;
    if (!asymptotic.empty()) report["asymptotic"] = asymptotic;
    if (!numeric.empty()) report["numeric"] = numeric;
    if (!mm.empty()) report["mm"] = mm;
    text = report.dump(2) + "\n";
  } else {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, rows] : {std::pair<const char*, const json*>{"asymptotic", &asymptotic},
                                     {"numeric", &numeric},
                                     {"mm", &mm}}) {
      if (rows->empty()) continue;
      if (!first) os << "\n";
      first = false;
      os << "# " << name << "\n" << render_rows(*rows, config.format);
    }
    text = os.str();
  }
  emit(config, text, out);
  return 0;
}

}  // namespace tclb::cli
