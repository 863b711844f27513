#include "tclb/cli.hpp"
#include "tclb/expansion.hpp"
#include "tclb/parallel_for.hpp"
#include "tclb/random.hpp"

#include <filesystem>
#include <ostream>

namespace tclb::cli {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t spec_key(const ContractionSpec& spec) {
  return ((static_cast<std::uint64_t>(spec.n) * 64 + static_cast<std::uint64_t>(spec.s)) * 64 +
          static_cast<std::uint64_t>(spec.t)) * 64 +
         static_cast<std::uint64_t>(spec.v);
}

std::vector<AlgorithmId> algorithms(const RunConfig& config) {
  if (config.algs.empty()) return {AlgorithmId::Nonsym, AlgorithmId::Direct, AlgorithmId::Sympres};
  std::vector<AlgorithmId> out;
  for (const auto& name : config.algs) {
    const AlgorithmId alg = parse_algorithm(name);
    if (std::find(out.begin(), out.end(), alg) == out.end()) out.push_back(alg);
  }
  return out;
}

struct Cell {
  AlgorithmId alg = AlgorithmId::Nonsym;
  ContractionSpec spec;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool match = false;
  BigInt products = 0;
  BigInt expected = 0;
  BigInt correction = 0;
  bool encoding_match = false;
  int irreducible = -1;  // -1 when not checked
  std::string error;
  bool pass() const { return error.empty() && match && products == expected && encoding_match && irreducible != 0; }
};

BigInt expected_products(AlgorithmId alg, const ContractionSpec& spec) {
  switch (alg) {
    case AlgorithmId::Nonsym: {
      BigInt out;
      const BigInt n = spec.n;
      mpz_pow_ui(out.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(spec.omega()));
      return out;
    }
    case AlgorithmId::Direct:
      return count_multisets(spec.n, spec.s) * count_multisets(spec.n, spec.t) * count_multisets(spec.n, spec.v);
    case AlgorithmId::Sympres:
      return count_multisets(spec.n, spec.omega());
  }
  return 0;
}

void run_cell(Cell& cell, const std::string& fault) {
  const ContractionSpec& spec = cell.spec;
  cell.expected = expected_products(cell.alg, spec);
  // Irreducibility on the tabulated products, equivalence on the full encoding.
  if (cell.trial == 0) cell.irreducible = is_irreducible(build_encoding(cell.alg, spec)) ? 1 : 0;
  const BilinearAlg enc = build_encoding(cell.alg, spec, EncodingVariant::Full);
  std::vector<Scalar> got;
  std::vector<Scalar> a_in, b_in;
  if (cell.alg == AlgorithmId::Nonsym) {
    const DenseTensor A = random_dense(spec.n, spec.order_a(), derive_seed(cell.seed, 0));
    const DenseTensor B = random_dense(spec.n, spec.order_b(), derive_seed(cell.seed, 1));
    std::uint64_t products = 0;
    const DenseTensor C = contract_nonsym(A, B, spec, &products);
    cell.products = static_cast<unsigned long>(products);
    cell.match = C == contract_oracle(A, B, spec, false);
    got = C.values();
    a_in = A.values();
    b_in = B.values();
  } else {
    const SymTensor A = random_symmetric(spec.n, spec.order_a(), derive_seed(cell.seed, 2));
    const SymTensor B = random_symmetric(spec.n, spec.order_b(), derive_seed(cell.seed, 3));
    const SymTensor expect = pack(contract_oracle(unpack(A), unpack(B), spec, true));
    if (cell.alg == AlgorithmId::Direct) {
      std::uint64_t products = 0;
      SymTensor C = contract_direct(A, B, spec, &products);
#ifdef TCLB_TEST_HOOKS
      if (fault == "psi-sign-flip")
        for (auto& x : C.values())
          if (x != 0) {
            x = -x;
            break;
          }
#endif
      cell.products = static_cast<unsigned long>(products);
      got = C.values();
      cell.match = C == expect;
    } else {
      SympresStats stats;
      const SymTensor C = contract_sympres(A, B, spec, &stats);
      cell.products = static_cast<unsigned long>(stats.stage1_products);
      cell.correction = static_cast<unsigned long>(stats.correction_products);
      got = C.values();
      cell.match = C == expect;
    }
    a_in = A.values();
    b_in = B.values();
  }
  (void)fault;
  cell.encoding_match = apply(enc, a_in, b_in) == got;
}

json cell_json(const Cell& c) {
  json j;
  j["alg"] = to_string(c.alg);
  j["s"] = c.spec.s;
  j["t"] = c.spec.t;
  j["v"] = c.spec.v;
  j["n"] = c.spec.n;
  j["trial"] = c.trial;
  j["seed"] = c.seed;
  j["match"] = c.match;
  j["products"] = c.products.get_str();
  j["expected_products"] = c.expected.get_str();
  j["correction_products"] = c.correction.get_str();
  j["encoding_match"] = c.encoding_match;
  j["irreducible"] = c.irreducible < 0 ? json() : json(c.irreducible == 1);
  j["error"] = c.error;
  j["pass"] = c.pass();
  return j;
}

std::string cell_name(const Cell& c) {
  return std::string(to_string(c.alg)) + " " + describe(c.spec) + " trial " + std::to_string(c.trial);
}

std::string failure_reason(const Cell& c) {
  if (!c.error.empty()) return c.error;
  if (!c.match) return "output differs from the oracle";
  if (c.products != c.expected)
    return "used " + c.products.get_str() + " products, expected " + c.expected.get_str();
  if (!c.encoding_match) return "bilinear encoding output differs";
  return "encoding is not irreducible";
}

}  // namespace

int cmd_verify_contraction(const RunConfig& in, std::ostream& out, std::ostream& err) {
  RunConfig config = in;
  if (config.n.empty()) config.n = {2, 3, 4};
  const std::size_t trials = config.trials ? config.trials : 5;
  const auto specs = spec_grid(config);
  const auto algs = algorithms(config);

  std::vector<Cell> cells;
  for (const auto& spec : specs)
    for (std::size_t trial = 0; trial < trials; ++trial)
      for (AlgorithmId alg : algs) {
        Cell c;
        c.alg = alg;
        c.spec = spec;
        c.trial = trial;
        c.seed = derive_seed(derive_seed(config.seed, spec_key(spec)), trial);
        cells.push_back(c);
      }
  parallel_for(cells.size(), [&](std::size_t i) {
    try {
      run_cell(cells[i], config.fault);
    } catch (const std::exception& e) {
      cells[i].error = e.what();
    }
  });

  bool passed = true;
  json rows = json::array();
  for (const auto& c : cells) {
    rows.push_back(cell_json(c));
    if (!c.pass()) {
      passed = false;
      err << "FAIL " << cell_name(c) << ": " << failure_reason(c) << "\n";
    }
  }
  std::string text;
  if (config.format == Format::Json) {
    json report;
    report["command"] = "verify-contraction";
    report["seed"] = config.seed;
    report["trials"] = trials;
    report["cells_checked"] = cells.size();
    report["passed"] = passed;
    report["cells"] = rows;
    text = report.dump(2) + "\n";
  } else {
    text = render_rows(rows, config.format);
  }
  emit(config, text, out);
  return passed ? 0 : 1;
}

// ---- verify-expansion -----------------------------------------------------

namespace {

bool applies(BoundFamily f, AlgorithmId alg, const ContractionSpec& spec) {
  const SpecClass cls = classify(spec);
  switch (f) {
    case BoundFamily::MM: return alg == AlgorithmId::Nonsym;
    case BoundFamily::Direct:
      return alg == AlgorithmId::Direct || (alg == AlgorithmId::Sympres && cls == SpecClass::Degenerate);
    case BoundFamily::DirectMV:
      return alg == AlgorithmId::Direct && cls == SpecClass::MatrixVectorLike;
    case BoundFamily::Sympres: return alg == AlgorithmId::Sympres && cls != SpecClass::Degenerate;
  }
  return false;
}

std::vector<BoundFamily> default_families(AlgorithmId alg, const ContractionSpec& spec) {
  switch (alg) {
    case AlgorithmId::Nonsym: return {BoundFamily::MM};
    case AlgorithmId::Direct:
      if (classify(spec) == SpecClass::MatrixVectorLike) return {BoundFamily::Direct, BoundFamily::DirectMV};
      return {BoundFamily::Direct};
    case AlgorithmId::Sympres:
      if (classify(spec) == SpecClass::Degenerate) return {BoundFamily::Direct};
      return {BoundFamily::Sympres};
  }
  return {};
}

ExpansionBound make_bound(BoundFamily f, const ContractionSpec& spec) {
  auto pw = [&](int e) {
    return BigInt(ipow_u64(static_cast<std::uint64_t>(spec.n), static_cast<unsigned>(e)));
  };
  switch (f) {
    case BoundFamily::MM: return bound_mm(pw(spec.s), pw(spec.t), pw(spec.v));
    case BoundFamily::Direct: return bound_direct(spec);
    case BoundFamily::DirectMV: return bound_direct_mv(spec);
    case BoundFamily::Sympres: return bound_sympres(spec);
  }
  return bound_direct(spec);
}

json report_json(const VerificationReport& r, AlgorithmId alg, const ContractionSpec& spec,
                 BoundFamily f, std::size_t rank_cols) {
  json j;
  j["subject"] = r.subject;
  j["alg"] = to_string(alg);
  j["s"] = spec.s;
  j["t"] = spec.t;
  j["v"] = spec.v;
  j["n"] = spec.n;
  j["bound_family"] = to_string(f);
  j["bound"] = r.bound;
  j["rank_cols"] = rank_cols;
  j["mode"] = to_string(r.mode);
  j["level"] = r.level();
  j["seed"] = r.seed;
  j["subsets_checked"] = r.subsets_checked;
  j["lw_checks"] = r.lw_checks;
  j["lw_failures"] = r.lw_failures;
  json violations = json::array();
  for (const auto& v : r.violations) {
    json x;
    x["columns"] = v.columns;
    x["ranks"] = v.ranks;
    x["bound_value"] = v.bound_value;
    x["actual"] = v.actual;
    violations.push_back(x);
  }
  j["violations"] = violations;
  j["passed"] = r.passed();
  return j;
}

}  // namespace

int cmd_verify_expansion(const RunConfig& in, std::ostream& out, std::ostream& err) {
  RunConfig config = in;
  if (config.n.empty()) config.n = {2};
  const std::size_t trials = config.trials ? config.trials : 2000;
  std::vector<BoundFamily> requested;
  for (const auto& name : config.bounds) requested.push_back(parse_bound_family(name));
  const auto specs = spec_grid(config);
  const auto algs = algorithms(config);

  json reports = json::array();
  json summary = json::array();
  bool passed = true;
  for (const auto& spec : specs)
    for (AlgorithmId alg : algs) {
      std::vector<BoundFamily> families;
      if (requested.empty()) {
        families = default_families(alg, spec);
      } else {
        for (BoundFamily f : requested)
          if (applies(f, alg, spec)) families.push_back(f);
      }
      if (families.empty()) continue;
      const BilinearAlg enc = build_encoding(alg, spec);
      VerifyMode mode =
          enc.rank_cols() <= kMaxExhaustiveColumns ? VerifyMode::Exhaustive : VerifyMode::Sampled;
      if (config.mode == "exhaustive") mode = VerifyMode::Exhaustive;
      if (config.mode == "sampled") mode = VerifyMode::Sampled;
      for (BoundFamily f : families) {
        const std::uint64_t seed =
            derive_seed(derive_seed(config.seed, spec_key(spec)), static_cast<std::uint64_t>(alg) * 4 +
                                                                        static_cast<std::uint64_t>(f));
        const VerificationReport r = verify_expansion(enc, make_bound(f, spec), mode, trials, seed);
        const json j = report_json(r, alg, spec, f, enc.rank_cols());
        if (!r.passed()) {
          passed = false;
          err << "FAIL " << to_string(alg) << " " << describe(spec) << " bound " << to_string(f) << ": "
              << r.violations.size() << " violations, " << r.lw_failures << " Loomis-Whitney failures\n";
        }
        if (!config.out.empty()) {
          std::filesystem::create_directories(config.out);
          const std::string file = std::string(to_string(alg)) + "_n" + std::to_string(spec.n) + "_s" +
                                   std::to_string(spec.s) + "t" + std::to_string(spec.t) + "v" +
                                   std::to_string(spec.v) + "_" + to_string(f) + ".json";
          write_file((std::filesystem::path(config.out) / file).string(), j.dump(2) + "\n");
        }
        json row;
        for (const auto* key : {"alg", "s", "t", "v", "n", "bound_family", "rank_cols", "mode", "level",
                                "subsets_checked", "lw_checks", "lw_failures"})
          row[key] = j[key];
        row["violations"] = r.violations.size();
        row["passed"] = r.passed();
        summary.push_back(row);
        reports.push_back(j);
      }
    }
  if (reports.empty()) throw UsageError("no (algorithm, spec, bound) combination applies");
  const std::string text =
      config.format == Format::Json ? reports.dump(2) + "\n" : render_rows(summary, config.format);
  if (config.out.empty())
    out << text;
  else
    out << render_rows(summary, config.format == Format::Json ? Format::Text : config.format);
  return passed ? 0 : 1;
}

}  // namespace tclb::cli
