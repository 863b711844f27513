#include "tclb/combinatorics.hpp"
#include "tclb/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace tclb;

namespace {

// Every tuple in [1..n]^d, oracle for the increasing-tuple routines.
std::vector<IndexTuple> all_tuples(int n, int d) {
  std::vector<IndexTuple> out;
  IndexTuple t(static_cast<std::size_t>(d), 1);
  while (true) {
    out.push_back(t);
    int pos = d - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++t[static_cast<std::size_t>(pos)];
  }
  return out;
}

std::size_t distinct_permutations(IndexTuple t) {
  std::sort(t.begin(), t.end());
  std::size_t count = 0;
  do ++count;
  while (std::next_permutation(t.begin(), t.end()));
  return count;
}

}  // namespace

TEST(CountMultisets, MatchesBruteForceEnumeration) {
  for (int n = 1; n <= 5; ++n)
    for (int d = 0; d <= 4; ++d) {
      std::set<IndexTuple> sorted_tuples;
      for (auto t : all_tuples(n, d)) {
        std::sort(t.begin(), t.end());
        sorted_tuples.insert(t);
      }
      EXPECT_EQ(count_multisets(n, d), BigInt(static_cast<unsigned long>(sorted_tuples.size())))
          << "n=" << n << " d=" << d;
      EXPECT_EQ(count_multisets_small(n, d), sorted_tuples.size());
    }
}

TEST(CountMultisets, KnownValues) {
  EXPECT_EQ(count_multisets(2, 2), 3);
  EXPECT_EQ(count_multisets(3, 3), 10);
  EXPECT_EQ(count_multisets(4, 3), 20);
  EXPECT_EQ(count_multisets(7, 0), 1);
  EXPECT_EQ(count_multisets(0, 0), 1);
  EXPECT_EQ(count_multisets(0, 2), 0);
}

TEST(IncreasingTuples, EnumerationIsSortedAndComplete) {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 4; ++d) {
      std::vector<IndexTuple> expect;
      for (const auto& t : all_tuples(n, d))
        if (std::is_sorted(t.begin(), t.end())) expect.push_back(t);
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(enumerate_increasing(n, d), expect);
    }
}

TEST(IncreasingTuples, RankUnrankRoundTrip) {
  for (int n = 1; n <= 5; ++n)
    for (int d = 0; d <= 4; ++d) {
      const auto tuples = enumerate_increasing(n, d);
      for (std::size_t r = 0; r < tuples.size(); ++r) {
        EXPECT_EQ(tuple_rank(tuples[r], n), r);
        EXPECT_EQ(tuple_rank_exact(tuples[r], n), BigInt(static_cast<unsigned long>(r)));
        EXPECT_EQ(tuple_unrank(r, n, d), tuples[r]);
      }
    }
}

TEST(IncreasingTuples, NextIncreasingWalksTheEnumeration) {
  const auto tuples = enumerate_increasing(4, 3);
  IndexTuple t = tuples.front();
  std::size_t seen = 1;
  while (next_increasing(t, 4)) {
    ASSERT_LT(seen, tuples.size());
    EXPECT_EQ(t, tuples[seen]);
    ++seen;
  }
  EXPECT_EQ(seen, tuples.size());
}

TEST(IncreasingTuples, RejectsOutOfRange) {
  EXPECT_THROW(require_in_range({0, 1}, 3), PreconditionError);
  EXPECT_THROW(require_in_range({1, 4}, 3), PreconditionError);
  EXPECT_NO_THROW(require_in_range({1, 3}, 3));
  EXPECT_TRUE(is_increasing({1, 1, 2}));
  EXPECT_FALSE(is_increasing({2, 1}));
}

TEST(Multiplicity, EqualsDistinctPermutationCount) {
  for (const auto& t : all_tuples(3, 4))
    EXPECT_EQ(multiplicity_factor(sorted(t)), distinct_permutations(t));
}

TEST(FlatIndex, RoundTripsRowMajor) {
  const auto tuples = all_tuples(3, 3);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    EXPECT_EQ(flat_index(tuples[r], 3), r);
    EXPECT_EQ(flat_unindex(r, 3, 3), tuples[r]);
  }
}

TEST(Partitions, CountsMatchPositionChoices) {
  const IndexTuple t = {1, 1, 2, 3};
  for (int p = 0; p <= 4; ++p) {
    const int q = 4 - p;
    const auto splits = partitions(t, p, q);
    EXPECT_EQ(splits.size(), to_u64(binomial(4, static_cast<unsigned long>(p))));
    // Oracle: tally splits by choosing kept positions directly.
    std::map<Split, std::size_t> tally;
    for (const auto& pos : position_subsets(4, p)) {
      IndexTuple a, b;
      for (int i = 0; i < 4; ++i) {
        if (std::find(pos.begin(), pos.end(), i) != pos.end())
          a.push_back(t[static_cast<std::size_t>(i)]);
        else
          b.push_back(t[static_cast<std::size_t>(i)]);
      }
      ++tally[{a, b}];
    }
    const auto counted = partition_counts(t, p, q);
    EXPECT_EQ(counted.size(), tally.size());
    for (const auto& c : counted) EXPECT_EQ(c.multiplicity, tally[c.split]);
    EXPECT_EQ(partitions(t, p, q, true).size(), tally.size());
  }
}

TEST(Projections, SizesAndUniqueness) {
  const IndexTuple t = {2, 2, 5};
  EXPECT_EQ(projections(t, 2).size(), 3u);
  EXPECT_EQ(projections(t, 2, true).size(), 2u);
  EXPECT_EQ(position_subsets(5, 2).size(), 10u);
  EXPECT_EQ(position_subsets(3, 0).size(), 1u);
}

TEST(Spec, ClassifyAndKappa) {
  EXPECT_EQ(classify({4, 2, 1, 0}), SpecClass::MatrixVectorLike);
  EXPECT_EQ(classify({4, 1, 1, 1}), SpecClass::MatrixMatrixLike);
  EXPECT_EQ(classify({4, 1, 0, 0}), SpecClass::Degenerate);
  EXPECT_EQ(classify({4, 0, 0, 0}), SpecClass::Degenerate);
  const ContractionSpec spec{3, 2, 1, 1};
  EXPECT_EQ(spec.omega(), 4);
  EXPECT_EQ(spec.kappa(), 3);
  EXPECT_THROW(validate({0, 1, 1, 1}), PreconditionError);
  EXPECT_THROW(validate({2, -1, 1, 1}), PreconditionError);
}

TEST(Arithmetic, BinomialAndFactorial) {
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(binomial(6, 2), 15);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial_u64(10, 3), 120u);
  EXPECT_EQ(ipow_u64(3, 4), 81u);
  for (unsigned long n = 0; n <= 10; ++n)
    for (unsigned long k = 0; k <= n; ++k)
      EXPECT_EQ(binomial(n, k) * factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(n - k)),
                factorial(static_cast<unsigned>(n)));
}

TEST(Scalars, ParseAndPrint) {
  EXPECT_EQ(parse_scalar("3/6"), Scalar(1, 2));
  EXPECT_EQ(to_fraction_string(Scalar(4)), "4/1");
  EXPECT_EQ(to_string(Scalar(-3, 4)), "-3/4");
}

TEST(Random, DeterministicAndInRange) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(r.below(13), 13u);
    const long x = r.range(-9, 9);
    EXPECT_GE(x, -9);
    EXPECT_LE(x, 9);
  }
  const auto s = r.subset_of_size(20, 7);
  EXPECT_EQ(s.size(), 7u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 7u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}
