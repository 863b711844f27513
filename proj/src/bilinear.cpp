#include "tclb/bilinear.hpp"

#include <algorithm>
#include <set>

namespace tclb {

namespace {

std::size_t cube(int n, int d) {
  return ipow_u64(static_cast<std::uint64_t>(n), static_cast<unsigned>(d));
}

DomainInfo domains_for(AlgorithmId alg, const ContractionSpec& spec, EncodingVariant variant) {
  auto full = [](int d) { return "[1.." + std::string("n]^") + std::to_string(d); };
  auto inc = [](int d) { return "<1..n>^" + std::to_string(d); };
  switch (alg) {
    case AlgorithmId::Nonsym:
      return {full(spec.order_a()), full(spec.order_b()), full(spec.order_c()),
              full(spec.s) + " x " + full(spec.t) + " x " + full(spec.v)};
    case AlgorithmId::Direct:
      return {inc(spec.order_a()), inc(spec.order_b()), inc(spec.order_c()),
              inc(spec.s) + " x " + inc(spec.t) + " x " + inc(spec.v)};
    case AlgorithmId::Sympres: {
      std::string m = classify(spec) == SpecClass::Degenerate
                          ? inc(spec.s) + " x " + inc(spec.t) + " x " + inc(spec.v)
                          : inc(spec.omega());
      if (variant == EncodingVariant::Full) m += " + correction";
      return {inc(spec.order_a()), inc(spec.order_b()), inc(spec.order_c()), m};
    }
  }
  return {};
}

}  // namespace

BilinearAlg encoding_from_columns(std::size_t ra, std::size_t rb, std::size_t rc,
                                  const std::vector<ProductColumn>& columns) {
  std::vector<Triplet> ta, tb, tc;
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (const auto& term : columns[col].a) ta.push_back({term.index, col, Scalar(term.coef)});
    for (const auto& term : columns[col].b) tb.push_back({term.index, col, Scalar(term.coef)});
    for (const auto& term : columns[col].c) tc.push_back({term.index, col, Scalar(term.coef)});
  }
  BilinearAlg out;
  out.FA = SparseExactMatrix::from_triplets(ra, columns.size(), ta);
  out.FB = SparseExactMatrix::from_triplets(rb, columns.size(), tb);
  out.FC = SparseExactMatrix::from_triplets(rc, columns.size(), tc);
  return out;
}

BilinearAlg build_encoding(AlgorithmId alg, const ContractionSpec& spec, EncodingVariant variant) {
  validate(spec);
  std::size_t ra, rb, rc;
  if (alg == AlgorithmId::Nonsym) {
    ra = cube(spec.n, spec.order_a());
    rb = cube(spec.n, spec.order_b());
    rc = cube(spec.n, spec.order_c());
  } else {
    ra = count_multisets_small(spec.n, spec.order_a());
    rb = count_multisets_small(spec.n, spec.order_b());
    rc = count_multisets_small(spec.n, spec.order_c());
  }
  std::vector<ProductColumn> columns;
  if (alg == AlgorithmId::Sympres && variant == EncodingVariant::Canonical)
    columns = sympres_plan(spec)->stage1;
  else
    columns = algorithm_columns(alg, spec);
  BilinearAlg out = encoding_from_columns(ra, rb, rc, columns);
  out.alg = alg;
  out.spec = spec;
  out.variant = variant;
  out.domains = domains_for(alg, spec, variant);
  return out;
}

std::vector<Scalar> apply(const BilinearAlg& alg, const std::vector<Scalar>& a,
                          const std::vector<Scalar>& b) {
  require(a.size() == alg.dim_a(), "length of a differs from the A dimension");
  require(b.size() == alg.dim_b(), "length of b differs from the B dimension");
  std::vector<Scalar> c(alg.dim_c(), Scalar(0));
  for (std::size_t col = 0; col < alg.rank_cols(); ++col) {
    Scalar left = 0;
    for (const auto& [r, w] : alg.FA.column(col)) left += w * a[r];
    if (left == 0) continue;
    Scalar right = 0;
    for (const auto& [r, w] : alg.FB.column(col)) right += w * b[r];
    const Scalar prod = left * right;
    for (const auto& [r, w] : alg.FC.column(col)) c[r] += w * prod;
  }
  return c;
}

BilinearAlg subset(const BilinearAlg& alg, const std::vector<std::size_t>& columns) {
  std::set<std::size_t> seen;
  for (std::size_t c : columns) {
    require(c < alg.rank_cols(), "subset column out of range");
    require(seen.insert(c).second, "subset column repeated");
  }
  BilinearAlg out;
  out.alg = alg.alg;
  out.spec = alg.spec;
  out.variant = alg.variant;
  out.domains = alg.domains;
  out.FA = alg.FA.select_columns(columns);
  out.FB = alg.FB.select_columns(columns);
  out.FC = alg.FC.select_columns(columns);
  return out;
}

bool is_irreducible(const BilinearAlg& alg) {
  return exact_rank(alg.FA) == alg.dim_a() && exact_rank(alg.FB) == alg.dim_b() &&
         exact_rank(alg.FC) == alg.dim_c();
}

}  // namespace tclb
