#pragma once

#include "tclb/common.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tclb {

// 1-based indices; increasing means non-decreasing entries.
using IndexTuple = std::vector<int>;

struct ContractionSpec {
  int n = 1;
  int s = 0;
  int t = 0;
  int v = 0;

  int omega() const { return s + t + v; }
  int kappa() const;
  int order_a() const { return s + v; }
  int order_b() const { return v + t; }
  int order_c() const { return s + t; }

  bool operator==(const ContractionSpec&) const = default;
};

void validate(const ContractionSpec& spec);
std::string describe(const ContractionSpec& spec);

enum class SpecClass { MatrixVectorLike, MatrixMatrixLike, Degenerate };

SpecClass classify(const ContractionSpec& spec);
const char* to_string(SpecClass c);

BigInt count_multisets(long n, long d);
// Same value, for sizes that index memory. Throws if it overflows.
std::size_t count_multisets_small(int n, int d);

std::vector<IndexTuple> enumerate_increasing(int n, int d);

bool is_increasing(const IndexTuple& t);
void require_in_range(const IndexTuple& t, int n);

BigInt tuple_rank_exact(const IndexTuple& t, int n);
std::size_t tuple_rank(const IndexTuple& t, int n);
IndexTuple tuple_unrank(const BigInt& r, int n, int d);
IndexTuple tuple_unrank(std::size_t r, int n, int d);

// Successor in lexicographic order; false past the last tuple.
bool next_increasing(IndexTuple& t, int n);

std::uint64_t multiplicity_factor(const IndexTuple& t);

IndexTuple sorted(IndexTuple t);
IndexTuple merge_sorted(const IndexTuple& a, const IndexTuple& b);

// Flat row-major position in [n]^d.
std::size_t flat_index(const IndexTuple& t, int n);
IndexTuple flat_unindex(std::size_t r, int n, int d);

using Split = std::pair<IndexTuple, IndexTuple>;

// Order-preserving splits, ordered by lexicographic choice of the kept
// positions. unique keeps the first occurrence of each distinct pair.
std::vector<Split> partitions(const IndexTuple& t, int p, int q,
                              bool unique = false);

struct CountedSplit {
  Split split;
  std::size_t multiplicity;
};

// Distinct splits with how often each occurs among all C(p+q,p) splits.
std::vector<CountedSplit> partition_counts(const IndexTuple& t, int p, int q);

std::vector<IndexTuple> projections(const IndexTuple& t, int r,
                                    bool unique = false);

// All r-subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> position_subsets(int m, int r);

}  // namespace tclb
