#include "tclb/expansion.hpp"
#include "tclb/parallel_for.hpp"
#include "tclb/random.hpp"

#include <algorithm>

namespace tclb {

const char* to_string(VerifyMode m) {
  return m == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
}

namespace {

void check_family(const BilinearAlg& alg, const ExpansionBound& bound) {
  const ContractionSpec& spec = alg.spec;
  const bool degenerate = classify(spec) == SpecClass::Degenerate;
  switch (bound.family()) {
    case BoundFamily::MM: {
      require(alg.alg == AlgorithmId::Nonsym, "mm bound applies to the nonsymmetric algorithm only");
      const auto dims = bound.mm_dims();
      const BigInt volume = BigInt(ipow_u64(static_cast<std::uint64_t>(spec.n),
                                            static_cast<unsigned>(spec.omega())));
      require(dims[0] * dims[1] * dims[2] == volume,
              "mm bound dimensions do not match the contraction size");
      return;
    }
    case BoundFamily::Direct:
    case BoundFamily::DirectMV:
      require(alg.alg == AlgorithmId::Direct || (alg.alg == AlgorithmId::Sympres && degenerate),
              std::string(to_string(bound.family())) + " bound applies to the direct algorithm only");
      break;
    case BoundFamily::Sympres:
      require(alg.alg == AlgorithmId::Sympres && !degenerate,
              "sympres bound applies to the symmetry-preserving algorithm only");
      require(alg.variant == EncodingVariant::Canonical,
              "sympres bound applies to the canonical encoding only");
      break;
  }
  require(bound.spec() == spec, "bound spec " + describe(bound.spec()) +
                                    " differs from encoding spec " + describe(spec));
}

std::vector<int> lw_orders(const BilinearAlg& alg) {
  const ContractionSpec& spec = alg.spec;
  if (alg.alg == AlgorithmId::Sympres && classify(spec) != SpecClass::Degenerate) {
    std::vector<int> rs = {spec.s + spec.v, spec.v + spec.t, spec.s + spec.t};
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    rs.erase(std::remove(rs.begin(), rs.end(), 0), rs.end());
    return rs;
  }
  return {2};
}

struct SubsetOutcome {
  bool violated = false;
  Violation violation;
  std::size_t lw_checks = 0;
  std::size_t lw_failures = 0;
};

}  // namespace

std::vector<IndexTuple> column_tuples(const BilinearAlg& alg) {
  const ContractionSpec& spec = alg.spec;
  const std::size_t count = alg.rank_cols();
  std::vector<IndexTuple> out;
  out.reserve(count);
  if (alg.alg == AlgorithmId::Sympres && classify(spec) != SpecClass::Degenerate) {
    const std::size_t stage1 = count_multisets_small(spec.n, spec.omega());
    require(count == stage1, "column tuples need the canonical symmetry-preserving encoding");
    for (std::size_t c = 0; c < count; ++c) out.push_back(tuple_unrank(c, spec.n, spec.omega()));
    return out;
  }
  std::size_t ns, nt, nv;
  if (alg.alg == AlgorithmId::Nonsym) {
    ns = ipow_u64(static_cast<std::uint64_t>(spec.n), static_cast<unsigned>(spec.s));
    nt = ipow_u64(static_cast<std::uint64_t>(spec.n), static_cast<unsigned>(spec.t));
    nv = ipow_u64(static_cast<std::uint64_t>(spec.n), static_cast<unsigned>(spec.v));
  } else {
    ns = count_multisets_small(spec.n, spec.s);
    nt = count_multisets_small(spec.n, spec.t);
    nv = count_multisets_small(spec.n, spec.v);
  }
  require(count == ns * nt * nv, "column count differs from the (j, l, k) grid");
  for (std::size_t c = 0; c < count; ++c) {
    const int j = static_cast<int>(c / (nt * nv));
    const int l = static_cast<int>((c / nv) % nt);
    const int k = static_cast<int>(c % nv);
    out.push_back({j + 1, l + 1, k + 1});
  }
  return out;
}

VerificationReport verify_expansion(const BilinearAlg& alg, const ExpansionBound& bound,
                                    VerifyMode mode, std::size_t trials, std::uint64_t seed) {
  check_family(alg, bound);
  const std::size_t cols = alg.rank_cols();
  if (mode == VerifyMode::Exhaustive)
    require(cols <= kMaxExhaustiveColumns,
            "encoding with " + std::to_string(cols) + " columns is too large for exhaustive mode (limit " +
                std::to_string(kMaxExhaustiveColumns) + ")");

  std::vector<std::vector<std::size_t>> subsets;
  if (mode == VerifyMode::Exhaustive) {
    subsets.reserve(std::size_t{1} << cols);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cols); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t c = 0; c < cols; ++c)
        if (mask >> c & 1) s.push_back(c);
      subsets.push_back(std::move(s));
    }
  } else {
    Rng rng(seed);
    subsets.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) subsets.push_back(rng.subset_by_size(cols));
  }

  const std::vector<IndexTuple> tuples = column_tuples(alg);
  const std::vector<int> orders = lw_orders(alg);
  std::vector<SubsetOutcome> outcomes(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    const auto& cols_i = subsets[i];
    SubsetOutcome& out = outcomes[i];
    const std::size_t ra = exact_rank(alg.FA, cols_i);
    const std::size_t rb = exact_rank(alg.FB, cols_i);
    const std::size_t rc = exact_rank(alg.FC, cols_i);
    const ExactValue value = bound.evaluate(BigInt(static_cast<unsigned long>(ra)),
                                            BigInt(static_cast<unsigned long>(rb)),
                                            BigInt(static_cast<unsigned long>(rc)));
    const ExactValue size(static_cast<long>(cols_i.size()));
    if (value.compare(size) < 0) {
      out.violated = true;
      out.violation = {cols_i, {ra, rb, rc}, value.str(), cols_i.size()};
    }
    if (cols_i.empty()) return;
    std::vector<IndexTuple> V;
    V.reserve(cols_i.size());
    for (std::size_t c : cols_i) V.push_back(tuples[c]);
    for (int r : orders) {
      if (r > static_cast<int>(V.front().size())) continue;
      ++out.lw_checks;
      if (!loomis_whitney_check(V, r).passed()) ++out.lw_failures;
    }
  });

  VerificationReport report;
  report.subject = std::string(to_string(alg.alg)) + " " + describe(alg.spec);
  report.bound = bound.describe();
  report.mode = mode;
  report.seed = seed;
  report.subsets_checked = subsets.size();
  for (auto& o : outcomes) {
    if (o.violated) report.violations.push_back(std::move(o.violation));
    report.lw_checks += o.lw_checks;
    report.lw_failures += o.lw_failures;
  }
  return report;
}

}  // namespace tclb
