#include "tclb/contraction.hpp"

#include <algorithm>
#include <numeric>

namespace tclb {

const char* to_string(AlgorithmId alg) {
  switch (alg) {
    case AlgorithmId::Nonsym: return "nonsym";
    case AlgorithmId::Direct: return "direct";
    case AlgorithmId::Sympres: return "sympres";
  }
  return "?";
}

AlgorithmId parse_algorithm(const std::string& name) {
  if (name == "nonsym" || name == "upsilon") return AlgorithmId::Nonsym;
  if (name == "direct" || name == "psi") return AlgorithmId::Direct;
  if (name == "sympres" || name == "phi") return AlgorithmId::Sympres;
  throw UsageError("unknown algorithm '" + name + "' (expected nonsym, direct or sympres)");
}

namespace {

template <class T>
void check_operands(const T& A, const T& B, const ContractionSpec& spec) {
  validate(spec);
  require(A.n() == spec.n && B.n() == spec.n, "operand dimension differs from spec n");
  require(A.order() == spec.order_a(), "A must have order s+v");
  require(B.order() == spec.order_b(), "B must have order v+t");
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::size_t cube_size(int n, int d) {
  return ipow_u64(static_cast<std::uint64_t>(n), static_cast<unsigned>(d));
}

}  // namespace

DenseTensor contract_oracle(const DenseTensor& A, const DenseTensor& B,
                            const ContractionSpec& spec, bool symmetrize) {
  check_operands(A, B, spec);
  const int n = spec.n;
  DenseTensor raw(n, spec.order_c());
  for (std::size_t jr = 0; jr < cube_size(n, spec.s); ++jr) {
    const IndexTuple j = flat_unindex(jr, n, spec.s);
    for (std::size_t lr = 0; lr < cube_size(n, spec.t); ++lr) {
      const IndexTuple l = flat_unindex(lr, n, spec.t);
      Scalar acc = 0;
      for (std::size_t kr = 0; kr < cube_size(n, spec.v); ++kr) {
        const IndexTuple k = flat_unindex(kr, n, spec.v);
        acc += A.get(concat(j, k)) * B.get(concat(k, l));
      }
      raw.set(concat(j, l), acc);
    }
  }
  if (!symmetrize) return raw;

  const int w = spec.order_c();
  DenseTensor out(n, w);
  for (std::size_t r = 0; r < out.size(); ++r) {
    const IndexTuple i = flat_unindex(r, n, w);
    std::vector<int> perm(w);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar acc = 0;
    do {
      IndexTuple permuted(w);
      for (int pos = 0; pos < w; ++pos) permuted[pos] = i[perm[pos]];
      acc += raw.get(permuted);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.at_flat(r) = acc;
  }
  return out;
}

// A is an n^s by n^v matrix and B an n^v by n^t matrix in row-major order.
DenseTensor contract_nonsym(const DenseTensor& A, const DenseTensor& B,
                            const ContractionSpec& spec, std::uint64_t* products) {
  check_operands(A, B, spec);
  const std::size_t rows = cube_size(spec.n, spec.s);
  const std::size_t inner = cube_size(spec.n, spec.v);
  const std::size_t cols = cube_size(spec.n, spec.t);
  DenseTensor C(spec.n, spec.order_c());
  std::uint64_t count = 0;
  for (std::size_t J = 0; J < rows; ++J) {
    for (std::size_t L = 0; L < cols; ++L) {
      Scalar acc = 0;
      for (std::size_t K = 0; K < inner; ++K) {
        acc += A.at_flat(J * inner + K) * B.at_flat(K * cols + L);
        ++count;
      }
      C.at_flat(J * cols + L) = acc;
    }
  }
  if (products) *products = count;
  return C;
}

SymTensor contract_direct(const SymTensor& A, const SymTensor& B,
                          const ContractionSpec& spec, std::uint64_t* products) {
  check_operands(A, B, spec);
  const int n = spec.n;
  const Scalar prefactor(factorial(spec.s) * factorial(spec.t));
  const std::vector<IndexTuple> ks = enumerate_increasing(n, spec.v);
  std::vector<Scalar> rho(ks.size());
  for (std::size_t r = 0; r < ks.size(); ++r) rho[r] = Scalar(multiplicity_factor(ks[r]));

  SymTensor C(n, spec.order_c());
  std::uint64_t count = 0;
  IndexTuple i(spec.order_c(), 1);
  std::size_t irank = 0;
  do {
    Scalar acc = 0;
    for (const auto& split : partition_counts(i, spec.s, spec.t)) {
      const IndexTuple& j = split.split.first;
      const IndexTuple& l = split.split.second;
      Scalar inner = 0;
      for (std::size_t kr = 0; kr < ks.size(); ++kr) {
        inner += rho[kr] * A.at_rank(tuple_rank(merge_sorted(j, ks[kr]), n)) *
                 B.at_rank(tuple_rank(merge_sorted(ks[kr], l), n));
        ++count;
      }
      acc += Scalar(static_cast<unsigned long>(split.multiplicity)) * inner;
    }
    C.at_rank(irank++) = prefactor * acc;
  } while (next_increasing(i, n));
  if (products) *products = count;
  return C;
}

namespace {

Scalar combine(const std::vector<Term>& terms, const SymTensor& x) {
  Scalar acc = 0;
  for (const auto& term : terms) acc += Scalar(term.coef) * x.at_rank(term.index);
  return acc;
}

}  // namespace

SymTensor contract_sympres(const SymTensor& A, const SymTensor& B,
                           const ContractionSpec& spec, SympresStats* stats) {
  check_operands(A, B, spec);
  if (classify(spec) == SpecClass::Degenerate) {
    std::uint64_t count = 0;
    SymTensor out = contract_direct(A, B, spec, &count);
    if (stats) *stats = {count, 0};
    return out;
  }
  const auto plan = sympres_plan(spec);
  SympresStats local;
  // Z accumulates the stage-1 products; the correction is then subtracted.
  SymTensor C(spec.n, spec.order_c());
  for (const auto& col : plan->stage1) {
    const Scalar zhat = combine(col.a, A) * combine(col.b, B);
    ++local.stage1_products;
    for (const auto& term : col.c) C.at_rank(term.index) += Scalar(term.coef) * zhat;
  }
  for (const auto& col : plan->correction) {
    const Scalar prod = combine(col.a, A) * combine(col.b, B);
    ++local.correction_products;
    for (const auto& term : col.c) C.at_rank(term.index) -= Scalar(term.coef) * prod;
  }
  if (stats) *stats = local;
  return C;
}

MultCount count_multiplications(AlgorithmId alg, const ContractionSpec& spec) {
  validate(spec);
  MultCount out;
  switch (alg) {
    case AlgorithmId::Nonsym: {
      BigInt n = spec.n;
      mpz_pow_ui(out.high_order.get_mpz_t(), n.get_mpz_t(), spec.omega());
      break;
    }
    case AlgorithmId::Direct:
      out.high_order = count_multisets(spec.n, spec.s) * count_multisets(spec.n, spec.t) *
                       count_multisets(spec.n, spec.v);
      break;
    case AlgorithmId::Sympres: {
      const auto plan = sympres_plan(spec);
      out.high_order = static_cast<unsigned long>(plan->stage1.size());
      out.correction = static_cast<unsigned long>(plan->correction.size());
      break;
    }
  }
  return out;
}

std::vector<ProductColumn> nonsym_columns(const ContractionSpec& spec) {
  validate(spec);
  const std::size_t ns = cube_size(spec.n, spec.s);
  const std::size_t nt = cube_size(spec.n, spec.t);
  const std::size_t nv = cube_size(spec.n, spec.v);
  std::vector<ProductColumn> out;
  out.reserve(ns * nt * nv);
  for (std::size_t J = 0; J < ns; ++J)
    for (std::size_t L = 0; L < nt; ++L)
      for (std::size_t K = 0; K < nv; ++K)
        out.push_back({{{J * nv + K, 1}}, {{K * nt + L, 1}}, {{J * nt + L, 1}}});
  return out;
}

std::vector<ProductColumn> direct_columns(const ContractionSpec& spec) {
  validate(spec);
  const int n = spec.n;
  const auto js = enumerate_increasing(n, spec.s);
  const auto ls = enumerate_increasing(n, spec.t);
  const auto ks = enumerate_increasing(n, spec.v);
  const std::int64_t prefactor =
      static_cast<std::int64_t>(to_u64(factorial(spec.s) * factorial(spec.t)));
  std::vector<ProductColumn> out;
  out.reserve(js.size() * ls.size() * ks.size());
  for (const auto& j : js) {
    for (const auto& l : ls) {
      const IndexTuple h = merge_sorted(j, l);
      std::size_t mult = 0;
      for (const auto& split : partitions(h, spec.s, spec.t))
        if (split.first == j && split.second == l) ++mult;
      const std::size_t hr = tuple_rank(h, n);
      for (const auto& k : ks) {
        const auto weight = prefactor * static_cast<std::int64_t>(multiplicity_factor(k)) *
                            static_cast<std::int64_t>(mult);
        out.push_back({{{tuple_rank(merge_sorted(j, k), n), 1}},
                       {{tuple_rank(merge_sorted(k, l), n), 1}},
                       {{hr, weight}}});
      }
    }
  }
  return out;
}

std::vector<ProductColumn> sympres_columns(const ContractionSpec& spec) {
  const auto plan = sympres_plan(spec);
  std::vector<ProductColumn> out = plan->stage1;
  for (auto col : plan->correction) {
    for (auto& term : col.c) term.coef = -term.coef;
    out.push_back(std::move(col));
  }
  return out;
}

std::vector<ProductColumn> algorithm_columns(AlgorithmId alg, const ContractionSpec& spec) {
  switch (alg) {
    case AlgorithmId::Nonsym: return nonsym_columns(spec);
    case AlgorithmId::Direct: return direct_columns(spec);
    case AlgorithmId::Sympres: return sympres_columns(spec);
  }
  return {};
}

}  // namespace tclb
