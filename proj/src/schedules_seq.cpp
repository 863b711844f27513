#include "tclb/contraction.hpp"
#include "tclb/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tclb {

namespace {

class Emitter {
 public:
  Emitter(CacheSchedule& s, Addr first_fresh) : s_(s), next_(first_fresh) {
    slow_.insert(s.inputs.begin(), s.inputs.end());
  }

  Addr fresh() { return next_++; }
  bool resident(Addr x) const { return resident_.count(x) != 0; }
  bool in_slow(Addr x) const { return slow_.count(x) != 0; }

  void load(Addr x) {
    if (resident(x)) return;
    s_.events.push_back(CacheEvent::load(x));
    resident_.insert(x);
  }
  void store(Addr x) {
    s_.events.push_back(CacheEvent::store(x));
    slow_.insert(x);
  }
  void evict(Addr x) {
    if (!resident_.erase(x)) return;
    s_.events.push_back(CacheEvent::evict(x));
  }
  void compute(Addr out, Addr a, Addr b, OpKind op) {
    s_.events.push_back(CacheEvent::compute(out, a, b, op));
    resident_.insert(out);
  }

 private:
  CacheSchedule& s_;
  Addr next_;
  std::unordered_set<Addr> resident_;
  std::unordered_set<Addr> slow_;
};

std::vector<Addr> range_addrs(Addr first, std::size_t count) {
  std::vector<Addr> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

}  // namespace

long block_for_cache(std::uint64_t H) {
  const long b = static_cast<long>(std::floor(std::sqrt(static_cast<double>(H) / 3.0)));
  return std::max(1L, b);
}

CacheSchedule schedule_blocked_mm(long m, long n, long k, long block) {
  require(m >= 1 && n >= 1 && k >= 1, "matrix dimensions must be positive");
  require(block >= 1, "block must be >= 1");
  const Addr a0 = 0, b0 = static_cast<Addr>(m * k), c0 = b0 + static_cast<Addr>(k * n);
  auto A = [&](long i, long l) { return a0 + static_cast<Addr>(i * k + l); };
  auto B = [&](long l, long j) { return b0 + static_cast<Addr>(l * n + j); };
  auto C = [&](long i, long j) { return c0 + static_cast<Addr>(i * n + j); };
  CacheSchedule s;
  s.name = "blocked-mm m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
           " block=" + std::to_string(block);
  s.inputs = range_addrs(0, static_cast<std::size_t>(m * k + k * n));
  s.outputs = range_addrs(c0, static_cast<std::size_t>(m * n));
  Emitter e(s, c0 + static_cast<Addr>(m * n));

  for (long i0 = 0; i0 < m; i0 += block) {
    const long i1 = std::min(m, i0 + block);
    for (long j0 = 0; j0 < n; j0 += block) {
      const long j1 = std::min(n, j0 + block);
      std::vector<Addr> partial(static_cast<std::size_t>((i1 - i0) * (j1 - j0)));
      for (long l = 0; l < k; ++l) {
        const bool last = l == k - 1;
        for (long i = i0; i < i1; ++i) e.load(A(i, l));
        for (long j = j0; j < j1; ++j) e.load(B(l, j));
        for (long i = i0; i < i1; ++i)
          for (long j = j0; j < j1; ++j) {
            Addr& acc = partial[static_cast<std::size_t>((i - i0) * (j1 - j0) + (j - j0))];
            const Addr prod = (l == 0 && last) ? C(i, j) : e.fresh();
            e.compute(prod, A(i, l), B(l, j), OpKind::Mul);
            if (l == 0) {
              acc = prod;
              continue;
            }
            const Addr sum = last ? C(i, j) : e.fresh();
            e.compute(sum, acc, prod, OpKind::Add);
            e.evict(acc);
            e.evict(prod);
            acc = sum;
          }
        for (long i = i0; i < i1; ++i) e.evict(A(i, l));
        for (long j = j0; j < j1; ++j) e.evict(B(l, j));
      }
      for (long i = i0; i < i1; ++i)
        for (long j = j0; j < j1; ++j) {
          e.store(C(i, j));
          e.evict(C(i, j));
        }
    }
  }
  return s;
}

CacheSchedule schedule_blocked_direct(const ContractionSpec& spec, long block) {
  validate(spec);
  require(block >= 1, "block must be >= 1");
  const int n = spec.n;
  const auto js = enumerate_increasing(n, spec.s);
  const auto ls = enumerate_increasing(n, spec.t);
  const auto ks = enumerate_increasing(n, spec.v);
  const std::size_t da = count_multisets_small(n, spec.order_a());
  const std::size_t db = count_multisets_small(n, spec.order_b());
  const std::size_t dc = count_multisets_small(n, spec.order_c());
  const Addr b0 = da, c0 = da + db;
  CacheSchedule s;
  s.name = "blocked-direct " + describe(spec) + " block=" + std::to_string(block);
  s.inputs = range_addrs(0, da + db);
  s.outputs = range_addrs(c0, dc);
  Emitter e(s, c0 + dc);

  const long NJ = static_cast<long>(js.size()), NL = static_cast<long>(ls.size());
  const std::size_t NK = ks.size();
  auto out_of = [&](long j, long l) {
    return tuple_rank(merge_sorted(js[static_cast<std::size_t>(j)], ls[static_cast<std::size_t>(l)]), n);
  };
  // Traversal order of (j, l) pairs, to know each output's final contribution.
  std::vector<std::size_t> remaining(dc, 0);
  for (long j = 0; j < NJ; ++j)
    for (long l = 0; l < NL; ++l) ++remaining[out_of(j, l)];
  const std::vector<std::size_t> contributions = remaining;

  enum class State { None, Resident, Stored };
  std::vector<State> state(dc, State::None);
  std::vector<Addr> acc(dc, 0);

  for (long j0 = 0; j0 < NJ; j0 += block) {
    const long j1 = std::min(NJ, j0 + block);
    for (long l0 = 0; l0 < NL; l0 += block) {
      const long l1 = std::min(NL, l0 + block);
      const long width = l1 - l0;
      std::vector<Addr> partial(static_cast<std::size_t>((j1 - j0) * width));
      for (std::size_t kk = 0; kk < NK; ++kk) {
        const bool last = kk + 1 == NK;
        const IndexTuple& k = ks[kk];
        std::vector<Addr> rows, cols;
        for (long j = j0; j < j1; ++j) rows.push_back(tuple_rank(merge_sorted(js[static_cast<std::size_t>(j)], k), n));
        for (long l = l0; l < l1; ++l) cols.push_back(b0 + tuple_rank(merge_sorted(k, ls[static_cast<std::size_t>(l)]), n));
        for (Addr x : rows) e.load(x);
        for (Addr x : cols) e.load(x);
        for (long j = j0; j < j1; ++j)
          for (long l = l0; l < l1; ++l) {
            Addr& p = partial[static_cast<std::size_t>((j - j0) * width + (l - l0))];
            const std::size_t h = out_of(j, l);
            const bool sole = contributions[h] == 1;
            const Addr prod = (kk == 0 && last && sole) ? c0 + h : e.fresh();
            e.compute(prod, rows[static_cast<std::size_t>(j - j0)], cols[static_cast<std::size_t>(l - l0)], OpKind::Mul);
            if (kk == 0) {
              p = prod;
              continue;
            }
            const Addr sum = (last && sole) ? c0 + h : e.fresh();
            e.compute(sum, p, prod, OpKind::Add);
            e.evict(p);
            e.evict(prod);
            p = sum;
          }
        for (Addr x : rows) e.evict(x);
        for (Addr x : cols) e.evict(x);
      }
      // Fold finished pair sums into the packed outputs.
      std::vector<std::size_t> touched;
      for (long j = j0; j < j1; ++j)
        for (long l = l0; l < l1; ++l) {
          const Addr p = partial[static_cast<std::size_t>((j - j0) * width + (l - l0))];
          const std::size_t h = out_of(j, l);
          const bool final_pair = --remaining[h] == 0;
          if (contributions[h] == 1) {
            e.store(p);
            e.evict(p);
            continue;
          }
          if (state[h] == State::None) {
            acc[h] = p;
            state[h] = State::Resident;
            touched.push_back(h);
            continue;
          }
          if (state[h] == State::Stored) {
            e.load(acc[h]);
            state[h] = State::Resident;
            touched.push_back(h);
          }
          const Addr sum = final_pair ? c0 + h : e.fresh();
          e.compute(sum, acc[h], p, OpKind::Add);
          e.evict(acc[h]);
          e.evict(p);
          acc[h] = sum;
          if (final_pair) {
            e.store(sum);
            e.evict(sum);
          }
        }
      for (std::size_t h : touched) {
        if (remaining[h] == 0 || state[h] != State::Resident) continue;
        if (!e.in_slow(acc[h])) e.store(acc[h]);
        e.evict(acc[h]);
        state[h] = State::Stored;
      }
    }
  }
  return s;
}

namespace {

struct ColumnGroup {
  std::vector<std::size_t> columns;
};

struct Footprint {
  std::vector<std::size_t> a, b, c;
  std::size_t size() const { return a.size() + b.size() + c.size(); }
};

Footprint footprint(const std::vector<ProductColumn>& cols, const std::vector<std::size_t>& ids) {
  std::set<std::size_t> a, b, c;
  for (std::size_t id : ids) {
    for (const auto& t : cols[id].a) a.insert(t.index);
    for (const auto& t : cols[id].b) b.insert(t.index);
    for (const auto& t : cols[id].c) c.insert(t.index);
  }
  return {{a.begin(), a.end()}, {b.begin(), b.end()}, {c.begin(), c.end()}};
}

}  // namespace

CacheSchedule schedule_sympres_seq(const ContractionSpec& spec, long block) {
  validate(spec);
  require(block >= 1, "block must be >= 1");
  const auto plan = sympres_plan(spec);
  std::vector<ProductColumn> cols = plan->stage1;
  cols.insert(cols.end(), plan->correction.begin(), plan->correction.end());
  const std::size_t stage1 = plan->stage1.size();

  // Stage-1 groups keyed by the index ranges of the omega-tuple entries.
  std::vector<ColumnGroup> groups;
  if (plan->delegated) {
    groups.push_back({});
    for (std::size_t c = 0; c < stage1; ++c) groups.back().columns.push_back(c);
  } else {
    std::map<IndexTuple, ColumnGroup> by_key;
    for (std::size_t c = 0; c < stage1; ++c) {
      IndexTuple key = tuple_unrank(c, spec.n, spec.omega());
      for (int& x : key) x = (x - 1) / static_cast<int>(block);
      by_key[key].columns.push_back(c);
    }
    for (auto& [key, g] : by_key) groups.push_back(std::move(g));
  }
  std::size_t cap = 1;
  for (const auto& g : groups) cap = std::max(cap, footprint(cols, g.columns).size());
  // Correction products in column order, chunked to the same footprint.
  ColumnGroup chunk;
  for (std::size_t c = stage1; c < cols.size(); ++c) {
    chunk.columns.push_back(c);
    if (chunk.columns.size() > 1 && footprint(cols, chunk.columns).size() > cap) {
      chunk.columns.pop_back();
      groups.push_back(std::move(chunk));
      chunk = {{c}};
    }
  }
  if (!chunk.columns.empty()) groups.push_back(std::move(chunk));

  const std::size_t da = count_multisets_small(spec.n, spec.order_a());
  const std::size_t db = count_multisets_small(spec.n, spec.order_b());
  const std::size_t dc = count_multisets_small(spec.n, spec.order_c());
  const Addr b0 = da, c0 = da + db;
  CacheSchedule s;
  s.name = "sympres " + describe(spec) + " block=" + std::to_string(block);
  s.inputs = range_addrs(0, da + db);
  Emitter e(s, c0 + dc);

  std::vector<std::size_t> remaining(dc, 0);
  for (const auto& g : groups)
    for (std::size_t c : g.columns)
      for (const auto& t : cols[c].c) ++remaining[t.index];
  const std::vector<std::size_t> contributions = remaining;

  // Partial sums per output; a product may start several of them, so
  // addresses are reference counted and evicted when unreferenced.
  std::vector<Addr> acc(dc, 0);
  std::vector<bool> has_acc(dc, false);
  std::unordered_map<Addr, std::size_t> refs;
  std::vector<Addr> outputs(dc, 0);
  auto release = [&](Addr x) {
    if (--refs[x] == 0) {
      refs.erase(x);
      e.evict(x);
    }
  };

  auto combine = [&](const std::vector<Term>& terms, Addr base) {
    Addr value = base + terms.front().index;
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const Addr next = e.fresh();
      e.compute(next, value, base + terms[i].index, OpKind::Add);
      if (i > 1) e.evict(value);
      value = next;
    }
    return value;
  };

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const Footprint fp = footprint(cols, groups[gi].columns);
    for (std::size_t x : fp.a) e.load(x);
    for (std::size_t x : fp.b) e.load(b0 + x);
    for (std::size_t h : fp.c)
      if (has_acc[h]) e.load(acc[h]);
    for (std::size_t c : groups[gi].columns) {
      const ProductColumn& col = cols[c];
      const Addr left = combine(col.a, 0);
      const Addr right = combine(col.b, b0);
      const Addr prod = e.fresh();
      e.compute(prod, left, right, OpKind::Mul);
      if (col.a.size() > 1) e.evict(left);
      if (col.b.size() > 1) e.evict(right);
      refs[prod] = 1;
      for (const auto& t : col.c) {
        const std::size_t h = t.index;
        const bool final = --remaining[h] == 0;
        if (!has_acc[h]) {
          acc[h] = prod;
          has_acc[h] = true;
          ++refs[prod];
        } else {
          const Addr sum = final ? c0 + h : e.fresh();
          e.compute(sum, acc[h], prod, OpKind::Add);
          release(acc[h]);
          acc[h] = sum;
          refs[sum] = 1;
        }
        if (final) {
          outputs[h] = acc[h];
          if (!e.in_slow(acc[h])) e.store(acc[h]);
          has_acc[h] = false;
          release(acc[h]);
        }
      }
      release(prod);
    }
    // Keep what the next group needs; flush the rest.
    Footprint next;
    if (gi + 1 < groups.size()) next = footprint(cols, groups[gi + 1].columns);
    const std::set<std::size_t> keep_a(next.a.begin(), next.a.end());
    const std::set<std::size_t> keep_b(next.b.begin(), next.b.end());
    const std::set<std::size_t> keep_c(next.c.begin(), next.c.end());
    for (std::size_t x : fp.a)
      if (!keep_a.count(x)) e.evict(x);
    for (std::size_t x : fp.b)
      if (!keep_b.count(x)) e.evict(b0 + x);
    for (std::size_t h : fp.c) {
      if (!has_acc[h] || keep_c.count(h) || !e.resident(acc[h])) continue;
      if (!e.in_slow(acc[h])) e.store(acc[h]);
      e.evict(acc[h]);
    }
  }
  std::set<Addr> declared;
  for (std::size_t h = 0; h < dc; ++h)
    if (contributions[h] > 0) declared.insert(outputs[h]);
  s.outputs.assign(declared.begin(), declared.end());
  return s;
}

long sympres_block_for_cache(const ContractionSpec& spec, std::uint64_t H) {
  for (long b = spec.n; b >= 1; --b) {
    const SimReport r = simulate_cache(schedule_sympres_seq(spec, b), UINT64_MAX);
    if (r.peak_residency <= H) return b;
  }
  return 0;
}

}  // namespace tclb
