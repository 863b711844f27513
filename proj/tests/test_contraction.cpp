#include "tclb/contraction.hpp"
#include "tclb/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace tclb;

namespace {

// Independent reference: explicit loops over [n]^(s+t) x [n]^v, then a sum
// over every ordering of the output positions.
DenseTensor reference(const DenseTensor& A, const DenseTensor& B, const ContractionSpec& spec, bool sym) {
  const int n = spec.n, s = spec.s, t = spec.t, v = spec.v;
  DenseTensor raw(n, s + t);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    const IndexTuple jl = flat_unindex(r, n, s + t);
    Scalar acc = 0;
    for (std::size_t kr = 0; kr < ipow_u64(static_cast<std::uint64_t>(n), static_cast<unsigned>(v)); ++kr) {
      const IndexTuple k = flat_unindex(kr, n, v);
      IndexTuple a(jl.begin(), jl.begin() + s), b = k;
      a.insert(a.end(), k.begin(), k.end());
      b.insert(b.end(), jl.begin() + s, jl.end());
      acc += A.get(a) * B.get(b);
    }
    raw.at_flat(r) = acc;
  }
  if (!sym) return raw;
  DenseTensor out(n, s + t);
  std::vector<int> perm(static_cast<std::size_t>(s + t));
  for (std::size_t r = 0; r < out.size(); ++r) {
    const IndexTuple i = flat_unindex(r, n, s + t);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar acc = 0;
    do {
      IndexTuple p;
      for (int x : perm) p.push_back(i[static_cast<std::size_t>(x)]);
      acc += raw.get(p);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.at_flat(r) = acc;
  }
  return out;
}

std::vector<ContractionSpec> shapes(int max_omega) {
  std::vector<ContractionSpec> out;
  for (int s = 0; s <= max_omega; ++s)
    for (int t = 0; s + t <= max_omega; ++t)
      for (int v = 0; s + t + v <= max_omega; ++v) out.push_back({1, s, t, v});
  return out;
}

SymTensor vec(std::initializer_list<long> xs) {
  SymTensor t(static_cast<int>(xs.size()), 1);
  std::size_t r = 0;
  for (long x : xs) t.at_rank(r++) = x;
  return t;
}

}  // namespace

TEST(Oracle, MatchesIndependentReference) {
  for (auto spec : shapes(4))
    for (int n = 1; n <= 3; ++n) {
      spec.n = n;
      const DenseTensor A = random_dense(n, spec.order_a(), 3);
      const DenseTensor B = random_dense(n, spec.order_b(), 4);
      EXPECT_EQ(contract_oracle(A, B, spec, false), reference(A, B, spec, false)) << describe(spec);
      const DenseTensor As = unpack(random_symmetric(n, spec.order_a(), 5));
      const DenseTensor Bs = unpack(random_symmetric(n, spec.order_b(), 6));
      const DenseTensor C = contract_oracle(As, Bs, spec, true);
      EXPECT_EQ(C, reference(As, Bs, spec, true)) << describe(spec);
      EXPECT_TRUE(is_symmetric(C));
    }
}

TEST(Oracle, RejectsShapeMismatch) {
  EXPECT_THROW(contract_oracle(DenseTensor(2, 2), DenseTensor(2, 1), {2, 1, 1, 1}, false), PreconditionError);
  EXPECT_THROW(contract_oracle(DenseTensor(2, 2), DenseTensor(3, 2), {2, 1, 1, 1}, false), PreconditionError);
}

TEST(Oracle, MatrixVectorExample) {
  SymTensor A(2, 2);
  A.set({1, 1}, 1);
  A.set({1, 2}, 2);
  A.set({2, 2}, 3);
  const SymTensor b = vec({1, 1});
  const ContractionSpec spec{2, 1, 0, 1};
  const DenseTensor C = contract_oracle(unpack(A), unpack(b), spec, true);
  EXPECT_EQ(C.get({1}), 3);
  EXPECT_EQ(C.get({2}), 5);
  const SymTensor D = contract_direct(A, b, spec);
  EXPECT_EQ(D.get({1}), 3);
  EXPECT_EQ(D.get({2}), 5);
}

TEST(Oracle, OuterProductExample) {
  const SymTensor a = vec({1, 2}), b = vec({3, 4});
  const ContractionSpec spec{2, 1, 1, 0};
  const DenseTensor C = contract_oracle(unpack(a), unpack(b), spec, true);
  EXPECT_EQ(C.get({1, 1}), 6);
  EXPECT_EQ(C.get({1, 2}), 10);
  EXPECT_EQ(C.get({2, 2}), 16);
  const SymTensor D = contract_direct(a, b, spec);
  EXPECT_EQ(D.values(), (std::vector<Scalar>{6, 10, 16}));
}

TEST(Oracle, SymmetrizedMatrixProductIsABPlusBA) {
  const SymTensor A = random_symmetric(2, 2, 21), B = random_symmetric(2, 2, 22);
  const DenseTensor C = contract_oracle(unpack(A), unpack(B), {2, 1, 1, 1}, true);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      Scalar ab = 0, ba = 0;
      for (int k = 1; k <= 2; ++k) {
        ab += A.get({i, k}) * B.get({k, j});
        ba += B.get({i, k}) * A.get({k, j});
      }
      EXPECT_EQ(C.get({i, j}), ab + ba);
    }
}

TEST(Nonsym, MatchesOracleAndCountsProducts) {
  for (auto spec : shapes(4))
    for (int n = 2; n <= 4; ++n) {
      spec.n = n;
      const DenseTensor A = random_dense(n, spec.order_a(), 31);
      const DenseTensor B = random_dense(n, spec.order_b(), 32);
      std::uint64_t products = 0;
      EXPECT_EQ(contract_nonsym(A, B, spec, &products), reference(A, B, spec, false)) << describe(spec);
      EXPECT_EQ(products, ipow_u64(static_cast<std::uint64_t>(n), static_cast<unsigned>(spec.omega())));
    }
}

TEST(Nonsym, TensorProductWhenNothingIsContracted) {
  const DenseTensor a = random_dense(3, 1, 1), b = random_dense(3, 2, 2);
  const DenseTensor C = contract_nonsym(a, b, {3, 1, 2, 0});
  for (std::size_t r = 0; r < C.size(); ++r) {
    const IndexTuple i = flat_unindex(r, 3, 3);
    EXPECT_EQ(C.at_flat(r), a.get({i[0]}) * b.get({i[1], i[2]}));
  }
}

TEST(Direct, MatchesSymmetrizedReference) {
  for (auto spec : shapes(4))
    for (int n = 2; n <= 4; ++n) {
      spec.n = n;
      const SymTensor A = random_symmetric(n, spec.order_a(), 41 + static_cast<std::uint64_t>(n));
      const SymTensor B = random_symmetric(n, spec.order_b(), 51 + static_cast<std::uint64_t>(n));
      std::uint64_t products = 0;
      const SymTensor C = contract_direct(A, B, spec, &products);
      EXPECT_EQ(unpack(C), reference(unpack(A), unpack(B), spec, true)) << describe(spec);
      const BigInt expect =
          count_multisets(n, spec.s) * count_multisets(n, spec.t) * count_multisets(n, spec.v);
      EXPECT_EQ(BigInt(static_cast<unsigned long>(products)), expect) << describe(spec);
    }
}

TEST(Sympres, MatchesDirectAndCountsStageOne) {
  for (auto spec : shapes(4))
    for (int n = 2; n <= 4; ++n) {
      spec.n = n;
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const SymTensor A = random_symmetric(n, spec.order_a(), 100 + seed);
        const SymTensor B = random_symmetric(n, spec.order_b(), 200 + seed);
        SympresStats stats;
        const SymTensor C = contract_sympres(A, B, spec, &stats);
        EXPECT_EQ(C, contract_direct(A, B, spec)) << describe(spec);
        EXPECT_EQ(BigInt(static_cast<unsigned long>(stats.stage1_products)), count_multisets(n, spec.omega()))
            << describe(spec);
      }
    }
}

TEST(Sympres, WorkedExamples) {
  EXPECT_EQ(count_multiplications(AlgorithmId::Sympres, {2, 1, 0, 1}).high_order, 3);
  const ContractionSpec mm{3, 1, 1, 1};
  SympresStats stats;
  const SymTensor A = random_symmetric(3, 2, 1), B = random_symmetric(3, 2, 2);
  EXPECT_EQ(contract_sympres(A, B, mm, &stats), contract_direct(A, B, mm));
  EXPECT_EQ(stats.stage1_products, 10u);
}

TEST(Sympres, CorrectionUsesNoFallbackProducts) {
  for (auto spec : shapes(4))
    for (int n = 1; n <= 6; ++n) {
      spec.n = n;
      EXPECT_EQ(sympres_plan(spec)->fallback_products, 0u) << describe(spec);
    }
}

TEST(Sympres, CorrectionCountIsLowOrder) {
  for (auto spec : shapes(4)) {
    if (classify(spec) == SpecClass::Degenerate) continue;
    // Least-squares slope of log(count) against log(n) over n = 3..8.
    std::vector<double> xs, ys;
    for (int n = 3; n <= 8; ++n) {
      spec.n = n;
      const auto count = count_multiplications(AlgorithmId::Sympres, spec).correction;
      if (count == 0) continue;
      xs.push_back(std::log(n));
      ys.push_back(std::log(count.get_d()));
    }
    if (xs.size() < 2) continue;
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    EXPECT_LE(sxy / sxx, spec.omega() - 1 + 0.15) << describe(spec);
  }
}

TEST(Counts, TableFormulas) {
  const ContractionSpec spec{4, 2, 1, 0};
  EXPECT_EQ(count_multiplications(AlgorithmId::Direct, spec).high_order, 40);
  EXPECT_EQ(count_multiplications(AlgorithmId::Sympres, spec).high_order, 20);
  EXPECT_EQ(count_multiplications(AlgorithmId::Nonsym, spec).high_order, 64);
  EXPECT_EQ(count_multiplications(AlgorithmId::Nonsym, spec).correction, 0);
  EXPECT_EQ(count_multiplications(AlgorithmId::Direct, spec).correction, 0);
}

TEST(Columns, AlgorithmColumnCounts) {
  const ContractionSpec spec{3, 1, 1, 1};
  EXPECT_EQ(nonsym_columns(spec).size(), 27u);
  EXPECT_EQ(direct_columns(spec).size(), 27u);
  const auto plan = sympres_plan(spec);
  EXPECT_EQ(plan->stage1.size(), 10u);
  EXPECT_EQ(sympres_columns(spec).size(), plan->stage1.size() + plan->correction.size());
  EXPECT_FALSE(plan->delegated);
  EXPECT_TRUE(sympres_plan({3, 2, 0, 0})->delegated);
}

TEST(Names, ParseAlgorithm) {
  EXPECT_EQ(parse_algorithm("psi"), AlgorithmId::Direct);
  EXPECT_EQ(parse_algorithm("sympres"), AlgorithmId::Sympres);
  EXPECT_THROW(parse_algorithm("strassen"), UsageError);
}
