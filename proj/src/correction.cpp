#include "tclb/contraction.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <queue>
#include <tuple>
#include <unordered_map>

namespace tclb {

namespace {

using TripleKey = std::tuple<std::size_t, std::size_t, std::size_t>;  // (x, y, h)

std::int64_t as_i64(const BigInt& x) { return static_cast<std::int64_t>(to_u64(x)); }

std::vector<ProductColumn> stage1_columns(const ContractionSpec& spec) {
  const int n = spec.n;
  const std::int64_t fs = as_i64(factorial(spec.s));
  const std::int64_t ft = as_i64(factorial(spec.t));
  std::vector<ProductColumn> out;
  IndexTuple i(spec.omega(), 1);
  do {
    ProductColumn col;
    for (const auto& [j, a] : partitions(i, spec.order_a(), spec.t, true))
      col.a.push_back({tuple_rank(j, n), ft / static_cast<std::int64_t>(multiplicity_factor(a))});
    for (const auto& [l, b] : partitions(i, spec.order_b(), spec.s, true))
      col.b.push_back({tuple_rank(l, n), fs / static_cast<std::int64_t>(multiplicity_factor(b))});
    for (const auto& [h, c] : partitions(i, spec.order_c(), spec.v, true))
      col.c.push_back({tuple_rank(h, n),
                       fs * ft * static_cast<std::int64_t>(multiplicity_factor(c))});
    out.push_back(std::move(col));
  } while (next_increasing(i, n));
  return out;
}

// Signed coefficient of A[x]*B[y] in C[h]: stage-1 expansion minus target.
std::map<TripleKey, std::int64_t> residual_terms(const ContractionSpec& spec,
                                                 const std::vector<ProductColumn>& stage1) {
  std::map<TripleKey, std::int64_t> acc;
  for (const auto& col : stage1)
    for (const auto& a : col.a)
      for (const auto& b : col.b)
        for (const auto& c : col.c) acc[{a.index, b.index, c.index}] += a.coef * b.coef * c.coef;
  for (const auto& col : direct_columns(spec))
    acc[{col.a[0].index, col.b[0].index, col.c[0].index}] -= col.c[0].coef;
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

enum GroupKind : int { kShared = 0, kByB = 1, kByA = 2 };

struct Candidate {
  std::size_t count;
  int kind;
  std::uint64_t key;
  bool operator<(const Candidate& o) const {
    if (count != o.count) return count < o.count;
    if (kind != o.kind) return kind > o.kind;
    return key > o.key;
  }
};

// Greedy cover of the residual triples by groups that each cost one product:
// kShared  (x,y): A[x]*B[y] scattered to every h with its weight.
// kByB     (y,h): (sum_x w*A[x]) * B[y] into C[h].
// kByA     (x,h): A[x] * (sum_y w*B[y]) into C[h].
std::vector<ProductColumn> factor_residual(const std::map<TripleKey, std::int64_t>& residual,
                                           std::size_t rb, std::size_t rc) {
  struct Entry {
    std::size_t x, y, h;
    std::int64_t w;
  };
  std::vector<Entry> entries;
  for (const auto& [key, w] : residual)
    entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});

  auto key_of = [&](int kind, const Entry& e) -> std::uint64_t {
    switch (kind) {
      case kShared: return e.x * rb + e.y;
      case kByB: return e.y * rc + e.h;
      default: return e.x * rc + e.h;
    }
  };
  std::array<std::unordered_map<std::uint64_t, std::vector<std::size_t>>, 3> members;
  for (std::size_t idx = 0; idx < entries.size(); ++idx)
    for (int kind = 0; kind < 3; ++kind) members[kind][key_of(kind, entries[idx])].push_back(idx);

  std::priority_queue<Candidate> heap;
  for (int kind = 0; kind < 3; ++kind)
    for (const auto& [key, list] : members[kind]) heap.push({list.size(), kind, key});

  std::vector<bool> covered(entries.size(), false);
  std::vector<ProductColumn> out;
  while (!heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    const auto& list = members[top.kind][top.key];
    std::size_t live = 0;
    for (std::size_t idx : list) live += !covered[idx];
    if (live == 0) continue;
    if (live < top.count) {
      heap.push({live, top.kind, top.key});
      continue;
    }
    ProductColumn col;
    const Entry& first = [&]() -> const Entry& {
      for (std::size_t idx : list)
        if (!covered[idx]) return entries[idx];
      return entries[list.front()];
    }();
    switch (top.kind) {
      case kShared:
        col.a.push_back({first.x, 1});
        col.b.push_back({first.y, 1});
        for (std::size_t idx : list)
          if (!covered[idx]) col.c.push_back({entries[idx].h, entries[idx].w});
        break;
      case kByB:
        for (std::size_t idx : list)
          if (!covered[idx]) col.a.push_back({entries[idx].x, entries[idx].w});
        col.b.push_back({first.y, 1});
        col.c.push_back({first.h, 1});
        break;
      default:
        col.a.push_back({first.x, 1});
        for (std::size_t idx : list)
          if (!covered[idx]) col.b.push_back({entries[idx].y, entries[idx].w});
        col.c.push_back({first.h, 1});
        break;
    }
    for (std::size_t idx : list) covered[idx] = true;
    out.push_back(std::move(col));
  }
  return out;
}

// Products of partial traces that make up (full-weight Z) - target.
// With S, T the position subsets of h c feeding A and B, summing over
// c in [n]^v factorizes into p shared, alpha A-only, beta B-only and gamma
// unused positions of c. Everything except p = v with S_h, T_h partitioning
// h is a residual; the product it needs depends on (alpha, beta, g u P, g' u P)
// only, so it is computed once and scattered to every h that uses it.
std::vector<ProductColumn> structured_columns(const ContractionSpec& spec) {
  const int n = spec.n;
  const int w = spec.order_c();
  const int v = spec.v;
  const std::int64_t prefactor = as_i64(factorial(spec.s) * factorial(spec.t));
  using Key = std::tuple<int, int, std::size_t, std::size_t>;  // alpha, beta, x', y'
  std::map<Key, std::map<std::size_t, std::int64_t>> weights;
  std::vector<std::vector<IndexTuple>> shared(v + 1);
  for (int p = 0; p <= v; ++p) shared[p] = enumerate_increasing(n, p);

  IndexTuple h(w, 1);
  do {
    const std::size_t hr = tuple_rank(h, n);
    for (unsigned smask = 0; smask < (1u << w); ++smask) {
      for (unsigned tmask = 0; tmask < (1u << w); ++tmask) {
        IndexTuple g, gp;
        for (int pos = 0; pos < w; ++pos) {
          if (smask >> pos & 1u) g.push_back(h[pos]);
          if (tmask >> pos & 1u) gp.push_back(h[pos]);
        }
        const int rest_a = spec.order_a() - static_cast<int>(g.size());  // p + alpha
        const int rest_b = spec.order_b() - static_cast<int>(gp.size());  // p + beta
        if (rest_a < 0 || rest_b < 0) continue;
        for (int p = 0; p <= std::min(rest_a, rest_b); ++p) {
          const int alpha = rest_a - p;
          const int beta = rest_b - p;
          const int gamma = v - p - alpha - beta;
          if (gamma < 0) continue;
          const bool target = p == v && (smask & tmask) == 0 && (smask | tmask) == (1u << w) - 1;
          if (target) continue;
          const std::int64_t mult =
              as_i64(factorial(v) / (factorial(p) * factorial(alpha) * factorial(beta) *
                                     factorial(gamma))) *
              static_cast<std::int64_t>(ipow_u64(n, gamma)) * prefactor;
          for (const auto& P : shared[p]) {
            const std::size_t xr = tuple_rank(merge_sorted(g, P), n);
            const std::size_t yr = tuple_rank(merge_sorted(gp, P), n);
            weights[{alpha, beta, xr, yr}][hr] +=
                mult * static_cast<std::int64_t>(multiplicity_factor(P));
          }
        }
      }
    }
  } while (next_increasing(h, n));

  std::vector<ProductColumn> out;
  for (const auto& [key, per_h] : weights) {
    const auto& [alpha, beta, xr, yr] = key;
    ProductColumn col;
    for (const auto& [hr, wgt] : per_h)
      if (wgt != 0) col.c.push_back({hr, wgt});
    if (col.c.empty()) continue;
    const IndexTuple x = tuple_unrank(xr, n, spec.order_a() - alpha);
    const IndexTuple y = tuple_unrank(yr, n, spec.order_b() - beta);
    for (const auto& a : enumerate_increasing(n, alpha))
      col.a.push_back({tuple_rank(merge_sorted(x, a), n),
                       static_cast<std::int64_t>(multiplicity_factor(a))});
    for (const auto& b : enumerate_increasing(n, beta))
      col.b.push_back({tuple_rank(merge_sorted(y, b), n),
                       static_cast<std::int64_t>(multiplicity_factor(b))});
    out.push_back(std::move(col));
  }
  return out;
}

// Stage 1 uses the tabulated weights t!/rho(a), s!/rho(b); the full-weight
// form counts position subsets instead. They differ only on tuples with
// repeated entries; each such difference costs at most two products.
std::vector<ProductColumn> diagonal_columns(const ContractionSpec& spec,
                                            const std::vector<ProductColumn>& stage1) {
  const int n = spec.n;
  std::vector<ProductColumn> out;
  IndexTuple i(spec.omega(), 1);
  std::size_t col_index = 0;
  do {
    const ProductColumn& tab = stage1[col_index++];
    std::vector<Term> full_a, full_b;
    for (const auto& cs : partition_counts(i, spec.order_a(), spec.t))
      full_a.push_back({tuple_rank(cs.split.first, n), static_cast<std::int64_t>(cs.multiplicity)});
    for (const auto& cs : partition_counts(i, spec.order_b(), spec.s))
      full_b.push_back({tuple_rank(cs.split.first, n), static_cast<std::int64_t>(cs.multiplicity)});
    auto diff = [](const std::vector<Term>& lhs, const std::vector<Term>& rhs) {
      std::vector<Term> d;
      for (std::size_t k = 0; k < lhs.size(); ++k)
        if (lhs[k].coef != rhs[k].coef) d.push_back({lhs[k].index, lhs[k].coef - rhs[k].coef});
      return d;
    };
    // (tab_a - full_a) * tab_b + full_a * (tab_b - full_b)
    std::vector<Term> da = diff(tab.a, full_a);
    std::vector<Term> db = diff(tab.b, full_b);
    if (!da.empty()) out.push_back({da, tab.b, tab.c});
    if (!db.empty()) out.push_back({full_a, db, tab.c});
  } while (next_increasing(i, n));
  return out;
}

std::map<TripleKey, std::int64_t> expand(const std::vector<ProductColumn>& cols) {
  std::map<TripleKey, std::int64_t> acc;
  for (const auto& col : cols)
    for (const auto& a : col.a)
      for (const auto& b : col.b)
        for (const auto& c : col.c) acc[{a.index, b.index, c.index}] += a.coef * b.coef * c.coef;
  return acc;
}

std::shared_ptr<const SympresPlan> build_plan(const ContractionSpec& spec) {
  auto plan = std::make_shared<SympresPlan>();
  plan->spec = spec;
  if (classify(spec) == SpecClass::Degenerate) {
    plan->delegated = true;
    plan->stage1 = direct_columns(spec);
    return plan;
  }
  plan->stage1 = stage1_columns(spec);
  plan->correction = structured_columns(spec);
  for (auto& col : diagonal_columns(spec, plan->stage1)) plan->correction.push_back(std::move(col));
  // Whatever the closed-form pieces miss is covered greedily.
  auto leftover = residual_terms(spec, plan->stage1);
  for (const auto& [key, w] : expand(plan->correction)) leftover[key] -= w;
  std::erase_if(leftover, [](const auto& kv) { return kv.second == 0; });
  for (auto& col : factor_residual(leftover, count_multisets_small(spec.n, spec.order_b()),
                                   count_multisets_small(spec.n, spec.order_c()))) {
    plan->correction.push_back(std::move(col));
    ++plan->fallback_products;
  }
  return plan;
}

}  // namespace

std::shared_ptr<const SympresPlan> sympres_plan(const ContractionSpec& spec) {
  validate(spec);
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const SympresPlan>> cache;
  const auto key = std::make_tuple(spec.n, spec.s, spec.t, spec.v);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto plan = build_plan(spec);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(plan)).first->second;
}

}  // namespace tclb
