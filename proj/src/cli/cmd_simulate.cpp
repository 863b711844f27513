#include "tclb/cli.hpp"
#include "tclb/contraction.hpp"
#include "tclb/sim.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace tclb::cli {

namespace {

using json = nlohmann::ordered_json;

void put_report(json& row, const SimReport& r) {
  row["schedule"] = r.schedule;
  row["model"] = r.model;
  row["measured_cost"] = r.measured_cost;
  if (r.model == "cache") {
    row["loads"] = r.loads;
    row["stores"] = r.stores;
  }
  row["mult_count"] = r.mult_count;
  row["add_count"] = r.add_count;
  row["peak_residency"] = r.peak_residency;
  if (r.bound) {
    row["bound"] = r.bound->value.str();
    row["bound_approx"] = r.bound->value.decimal();
    row["bound_formula"] = r.bound->formula_id;
    row["bound_regime"] = r.bound->regime;
    row["constant_free"] = r.bound->constant_free;
    row["meets_bound"] = r.meets_bound;
    row["bound_ratio"] = r.bound_ratio;
  } else {
    row["bound"] = "";
    row["bound_approx"] = "";
    row["bound_formula"] = "";
    row["bound_regime"] = "";
    row["constant_free"] = false;
    row["meets_bound"] = true;
    row["bound_ratio"] = 0.0;
  }
  row["note"] = r.note;
}

struct Outcome {
  json rows = json::array();
  json processors = json::array();
  bool passed = true;
};

void record(Outcome& o, json row, const SimReport& r, std::ostream& err) {
  put_report(row, r);
  if (r.model == "parallel") {
    json per = json::array();
    for (std::size_t q = 0; q < r.traffic.size(); ++q) {
      json x;
      x["schedule"] = r.schedule;
      x["proc"] = q;
      x["sent"] = r.sent[q];
      x["received"] = r.received[q];
      x["traffic"] = r.traffic[q];
      per.push_back(x);
      o.processors.push_back(x);
    }
    row["per_processor"] = per;
  }
  if (!r.meets_bound) {
    o.passed = false;
    err << "FAIL " << r.schedule << ": measured " << r.measured_cost << " is below the bound "
        << r.bound->value.str() << "\n";
  }
  o.rows.push_back(row);
}

void record_error(Outcome& o, json row, const std::string& schedule, const SimulationError& e,
                  std::ostream& err) {
  o.passed = false;
  row["schedule"] = schedule;
  row["error"] = e.what();
  err << "FAIL " << schedule << ": " << e.what() << "\n";
  o.rows.push_back(row);
}

int finish(const RunConfig& config, const std::string& command, const Outcome& o, std::ostream& out) {
  std::string text;
  if (config.format == Format::Json) {
    json report;
    report["command"] = command;
    report["passed"] = o.passed;
    report["reports"] = o.rows;
    text = report.dump(2) + "\n";
  } else {
    json flat = json::array();
    for (const auto& row : o.rows) {
      json copy = row;
      copy.erase("per_processor");
      flat.push_back(copy);
    }
    std::ostringstream os;
    os << render_rows(flat, config.format);
    if (!o.processors.empty()) os << "\n# processors\n" << render_rows(o.processors, config.format);
    text = os.str();
  }
  emit(config, text, out);
  return o.passed ? 0 : 1;
}

std::vector<long> or_default(const std::vector<long>& xs, std::vector<long> fallback) {
  return xs.empty() ? fallback : xs;
}

template <class F>
void each_shape(const RunConfig& config, long fallback, F&& body) {
  const std::vector<long> ns =
      config.n.empty() ? std::vector<long>{fallback} : std::vector<long>(config.n.begin(), config.n.end());
  for (long m : or_default(config.m, ns))
    for (long n : ns)
      for (long k : or_default(config.k, ns)) body(m, n, k);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read schedule file '" + path + "'");
  return f;
}

long power(int n, int e) { return static_cast<long>(ipow_u64(static_cast<std::uint64_t>(n), static_cast<unsigned>(e))); }

}  // namespace

int cmd_simulate_cache(const RunConfig& in, std::ostream& out, std::ostream& err) {
  RunConfig config = in;
  const std::vector<long> Hs = or_default(config.H, {27});
  Outcome o;

  if (!config.schedule_file.empty()) {
    auto f = open_input(config.schedule_file);
    const CacheSchedule s = read_cache_schedule(f);
    for (long H : Hs) {
      json row;
      row["alg"] = "file";
      row["H"] = H;
      try {
        record(o, row, simulate_cache(s, static_cast<std::uint64_t>(H)), err);
      } catch (const SimulationError& e) {
        record_error(o, row, s.name, e, err);
      }
    }
    return finish(config, "simulate cache", o, out);
  }

  const std::vector<std::string> algs = config.algs.empty() ? std::vector<std::string>{"mm"} : config.algs;
  for (const auto& alg : algs) {
    if (alg == "mm") {
      each_shape(config, 8, [&](long m, long n, long k) {
        for (long H : Hs) {
          const long block = config.block ? config.block : block_for_cache(static_cast<std::uint64_t>(H));
          const CacheSchedule s = schedule_blocked_mm(m, n, k, block);
          json row;
          row["alg"] = "mm";
          row["m"] = m;
          row["n"] = n;
          row["k"] = k;
          row["H"] = H;
          row["block"] = block;
          try {
            SimReport r = simulate_cache(s, static_cast<std::uint64_t>(H));
            attach_bound(r, q_mm(m, n, k, H));
            record(o, row, r, err);
          } catch (const SimulationError& e) {
            record_error(o, row, s.name, e, err);
          }
        }
      });
      continue;
    }
    const AlgorithmId id = parse_algorithm(alg);
    RunConfig grid = config;
    if (grid.n.empty()) grid.n = {4};
    for (const auto& spec : spec_grid(grid)) {
      if (spec.omega() == 0) continue;
      for (long H : Hs) {
        const auto h = static_cast<std::uint64_t>(H);
        json row;
        row["alg"] = alg;
        row["s"] = spec.s;
        row["t"] = spec.t;
        row["v"] = spec.v;
        row["n"] = spec.n;
        row["H"] = H;
        CacheSchedule s;
        BoundValue bound;
        long block = config.block;
        switch (id) {
          case AlgorithmId::Nonsym:
            if (!block) block = block_for_cache(h);
            s = schedule_blocked_mm(power(spec.n, spec.s), power(spec.n, spec.t), power(spec.n, spec.v), block);
            bound = q_nonsym(spec, H);
            break;
          case AlgorithmId::Direct:
            if (!block) block = block_for_cache(h);
            s = schedule_blocked_direct(spec, block);
            bound = q_direct(spec, H);
            break;
          case AlgorithmId::Sympres:
            if (!block) block = sympres_block_for_cache(spec, h);
            if (!block) {
              o.passed = false;
              row["error"] = "no block size fits H";
              err << "FAIL sympres " << describe(spec) << " H=" << H << ": no block size fits H\n";
              o.rows.push_back(row);
              continue;
            }
            s = schedule_sympres_seq(spec, block);
            bound = classify(spec) == SpecClass::Degenerate ? q_direct(spec, H) : q_sympres(spec, H);
            break;
        }
        row["block"] = block;
        try {
          SimReport r = simulate_cache(s, h);
          if (id != AlgorithmId::Sympres || !s.reuses_partial_sums)
            attach_bound(r, bound);
          else
            r.note = "schedule reuses partial sums; bound not applied";
          record(o, row, r, err);
        } catch (const SimulationError& e) {
          record_error(o, row, s.name, e, err);
        }
      }
    }
  }
  return finish(config, "simulate cache", o, out);
}

int cmd_simulate_parallel(const RunConfig& in, std::ostream& out, std::ostream& err) {
  const RunConfig& config = in;
  Outcome o;
  if (!config.schedule_file.empty()) {
    auto f = open_input(config.schedule_file);
    const ParSchedule s = read_par_schedule(f);
    json row;
    row["alg"] = "file";
    row["p"] = s.p;
    row["M"] = config.M;
    try {
      record(o, row, simulate_parallel(s, config.M), err);
    } catch (const SimulationError& e) {
      record_error(o, row, s.name, e, err);
    }
    return finish(config, "simulate parallel", o, out);
  }
  for (const auto& alg : config.algs)
    if (alg != "mm") throw UsageError("parallel reference schedules exist for --alg mm only");
  std::vector<Grid> grids;
  for (const auto& g : config.grids.empty() ? std::vector<std::string>{"3d"} : config.grids)
    grids.push_back(parse_grid(g));
  const std::vector<long> ps = or_default(config.p, {8});
  each_shape(config, 8, [&](long m, long n, long k) {
    for (Grid g : grids)
      for (long p : ps) {
        const ParSchedule s = schedule_mm(g, m, n, k, static_cast<int>(p));
        json row;
        row["alg"] = "mm";
        row["grid"] = to_string(g);
        row["m"] = m;
        row["n"] = n;
        row["k"] = k;
        row["p"] = p;
        row["M"] = config.M;
        try {
          SimReport r = simulate_parallel(s, config.M);
          attach_bound(r, w_mm(m, n, k, p));
          record(o, row, r, err);
        } catch (const SimulationError& e) {
          record_error(o, row, s.name, e, err);
        }
      }
  });
  return finish(config, "simulate parallel", o, out);
}

}  // namespace tclb::cli
