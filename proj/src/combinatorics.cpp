#include "tclb/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tclb {

std::uint64_t to_u64(const BigInt& x) {
  if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
    throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const Scalar& x) { return x.get_str(); }

std::string to_fraction_string(const Scalar& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Scalar parse_scalar(const std::string& text) {
  Scalar out;
  if (text.empty() || out.set_str(text, 10) != 0 || out.get_den() == 0)
    throw PreconditionError("malformed rational: '" + text + "'");
  out.canonicalize();
  return out;
}

BigInt factorial(unsigned k) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("power overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

int ContractionSpec::kappa() const {
  return std::max({s + v, v + t, s + t});
}

void validate(const ContractionSpec& spec) {
  require(spec.n >= 1, "dimension n must be >= 1");
  require(spec.s >= 0 && spec.t >= 0 && spec.v >= 0,
          "tensor orders s, t, v must be non-negative");
}

std::string describe(const ContractionSpec& spec) {
  std::ostringstream os;
  os << "n=" << spec.n << " (s,t,v)=(" << spec.s << "," << spec.t << ","
     << spec.v << ")";
  return os.str();
}

SpecClass classify(const ContractionSpec& spec) {
  const int zeros = (spec.s == 0) + (spec.t == 0) + (spec.v == 0);
  if (zeros == 0) return SpecClass::MatrixMatrixLike;
  if (zeros == 1) return SpecClass::MatrixVectorLike;
  return SpecClass::Degenerate;
}

const char* to_string(SpecClass c) {
  switch (c) {
    case SpecClass::MatrixVectorLike: return "matrix-vector-like";
    case SpecClass::MatrixMatrixLike: return "matrix-matrix-like";
    case SpecClass::Degenerate: return "degenerate";
  }
  return "?";
}

BigInt count_multisets(long n, long d) {
  require(n >= 0 && d >= 0, "count_multisets needs n >= 0 and d >= 0");
  if (d == 0) return 1;
  if (n == 0) return 0;
  return binomial(static_cast<unsigned long>(n + d - 1),
                  static_cast<unsigned long>(d));
}

std::size_t count_multisets_small(int n, int d) {
  require(n >= 0 && d >= 0, "count_multisets needs n >= 0 and d >= 0");
  if (d == 0) return 1;
  if (n == 0) return 0;
  return binomial_u64(static_cast<std::uint64_t>(n + d - 1),
                      static_cast<std::uint64_t>(d));
}

bool is_increasing(const IndexTuple& t) {
  return std::is_sorted(t.begin(), t.end());
}

void require_in_range(const IndexTuple& t, int n) {
  for (int x : t) require(x >= 1 && x <= n, "index entry out of range [1,n]");
}

bool next_increasing(IndexTuple& t, int n) {
  const int d = static_cast<int>(t.size());
  int pos = d - 1;
  while (pos >= 0 && t[pos] == n) --pos;
  if (pos < 0) return false;
  const int value = t[pos] + 1;
  for (int i = pos; i < d; ++i) t[i] = value;
  return true;
}

std::vector<IndexTuple> enumerate_increasing(int n, int d) {
  require(n >= 1 && d >= 0, "enumerate_increasing needs n >= 1, d >= 0");
  std::vector<IndexTuple> out;
  out.reserve(count_multisets_small(n, d));
  IndexTuple t(d, 1);
  do {
    out.push_back(t);
  } while (next_increasing(t, n));
  return out;
}

namespace {

void check_rankable(const IndexTuple& t, int n) {
  require(n >= 1, "dimension must be >= 1");
  require_in_range(t, n);
  require(is_increasing(t), "tuple is not increasing");
}

}  // namespace

// Tuples starting with x at position pos, after prefix value prev, are
// preceded by all tuples whose entry at pos lies in [prev, x).
BigInt tuple_rank_exact(const IndexTuple& t, int n) {
  check_rankable(t, n);
  const long d = static_cast<long>(t.size());
  BigInt rank = 0;
  int prev = 1;
  for (long pos = 0; pos < d; ++pos) {
    for (int x = prev; x < t[pos]; ++x) rank += count_multisets(n - x + 1, d - pos - 1);
    prev = t[pos];
  }
  return rank;
}

std::size_t tuple_rank(const IndexTuple& t, int n) {
  check_rankable(t, n);
  const int d = static_cast<int>(t.size());
  std::size_t rank = 0;
  int prev = 1;
  for (int pos = 0; pos < d; ++pos) {
    for (int x = prev; x < t[pos]; ++x) rank += count_multisets_small(n - x + 1, d - pos - 1);
    prev = t[pos];
  }
  return rank;
}

IndexTuple tuple_unrank(const BigInt& r, int n, int d) {
  require(n >= 1 && d >= 0, "tuple_unrank needs n >= 1, d >= 0");
  require(r >= 0 && r < count_multisets(n, d), "rank out of range");
  BigInt rest = r;
  IndexTuple out(d);
  int x = 1;
  for (int pos = 0; pos < d; ++pos) {
    while (true) {
      BigInt block = count_multisets(n - x + 1, d - pos - 1);
      if (rest < block) break;
      rest -= block;
      ++x;
    }
    out[pos] = x;
  }
  return out;
}

IndexTuple tuple_unrank(std::size_t r, int n, int d) {
  require(n >= 1 && d >= 0, "tuple_unrank needs n >= 1, d >= 0");
  require(r < count_multisets_small(n, d), "rank out of range");
  IndexTuple out(d);
  int x = 1;
  for (int pos = 0; pos < d; ++pos) {
    while (true) {
      const std::size_t block = count_multisets_small(n - x + 1, d - pos - 1);
      if (r < block) break;
      r -= block;
      ++x;
    }
    out[pos] = x;
  }
  return out;
}

std::uint64_t multiplicity_factor(const IndexTuple& t) {
  IndexTuple s = sorted(t);
  BigInt out = factorial(static_cast<unsigned>(s.size()));
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    out /= factorial(static_cast<unsigned>(j - i));
    i = j;
  }
  return to_u64(out);
}

IndexTuple sorted(IndexTuple t) {
  std::sort(t.begin(), t.end());
  return t;
}

IndexTuple merge_sorted(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t flat_index(const IndexTuple& t, int n) {
  std::size_t r = 0;
  for (int x : t) r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(x - 1);
  return r;
}

IndexTuple flat_unindex(std::size_t r, int n, int d) {
  IndexTuple out(d);
  for (int pos = d - 1; pos >= 0; --pos) {
    out[pos] = static_cast<int>(r % static_cast<std::size_t>(n)) + 1;
    r /= static_cast<std::size_t>(n);
  }
  return out;
}

std::vector<std::vector<int>> position_subsets(int m, int r) {
  require(r >= 0 && r <= m, "subset size out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> pick(r);
  for (int i = 0; i < r; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    int pos = r - 1;
    while (pos >= 0 && pick[pos] == m - r + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < r; ++i) pick[i] = pick[i - 1] + 1;
  }
  return out;
}

std::vector<Split> partitions(const IndexTuple& t, int p, int q, bool unique) {
  require(p >= 0 && q >= 0 && static_cast<std::size_t>(p + q) == t.size(),
          "partition sizes must add up to the tuple length");
  std::vector<Split> out;
  for (const auto& kept : position_subsets(p + q, p)) {
    Split split;
    split.first.reserve(p);
    split.second.reserve(q);
    std::size_t k = 0;
    for (int pos = 0; pos < p + q; ++pos) {
      if (k < kept.size() && kept[k] == pos) {
        split.first.push_back(t[pos]);
        ++k;
      } else {
        split.second.push_back(t[pos]);
      }
    }
    if (unique && std::find(out.begin(), out.end(), split) != out.end()) continue;
    out.push_back(std::move(split));
  }
  return out;
}

std::vector<CountedSplit> partition_counts(const IndexTuple& t, int p, int q) {
  std::vector<CountedSplit> out;
  for (auto& split : partitions(t, p, q)) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CountedSplit& c) { return c.split == split; });
    if (it == out.end())
      out.push_back({std::move(split), 1});
    else
      ++it->multiplicity;
  }
  return out;
}

std::vector<IndexTuple> projections(const IndexTuple& t, int r, bool unique) {
  require(r >= 0 && static_cast<std::size_t>(r) <= t.size(),
          "projection order out of range");
  std::vector<IndexTuple> out;
  for (auto& split : partitions(t, r, static_cast<int>(t.size()) - r)) {
    if (unique && std::find(out.begin(), out.end(), split.first) != out.end()) continue;
    out.push_back(std::move(split.first));
  }
  return out;
}

}  // namespace tclb
