#include "tclb/sim.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace tclb {

const char* to_string(Grid g) {
  switch (g) {
    case Grid::OneD: return "1d";
    case Grid::TwoD: return "2d";
    case Grid::ThreeD: return "3d";
  }
  return "?";
}

Grid parse_grid(const std::string& name) {
  if (name == "1d") return Grid::OneD;
  if (name == "2d") return Grid::TwoD;
  if (name == "3d") return Grid::ThreeD;
  throw UsageError("unknown grid '" + name + "' (expected 1d, 2d or 3d)");
}

ParSchedule schedule_mm_grid(long m, long n, long k, int pm, int pn, int pk) {
  require(m >= 1 && n >= 1 && k >= 1, "matrix dimensions must be positive");
  require(pm >= 1 && pn >= 1 && pk >= 1, "grid dimensions must be positive");
  const std::array<std::pair<long, int>, 3> axes = {{{m, pm}, {n, pn}, {k, pk}}};
  const char* names[] = {"m", "n", "k"};
  for (int i = 0; i < 3; ++i)
    require(axes[i].first % axes[i].second == 0,
            std::string(names[i]) + "=" + std::to_string(axes[i].first) +
                " is not divisible by grid dimension " + std::to_string(axes[i].second));
  const long bm = m / pm, bn = n / pn, bk = k / pk;
  const Addr a0 = 0, b0 = static_cast<Addr>(m * k), c0 = b0 + static_cast<Addr>(k * n);
  auto A = [&](long i, long l) { return a0 + static_cast<Addr>(i * k + l); };
  auto B = [&](long l, long j) { return b0 + static_cast<Addr>(l * n + j); };
  auto C = [&](long i, long j) { return c0 + static_cast<Addr>(i * n + j); };
  auto proc = [&](long a, long b, long c) { return static_cast<int>((a * pn + b) * pk + c); };

  ParSchedule s;
  s.name = "mm-grid m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
           " grid=" + std::to_string(pm) + "x" + std::to_string(pn) + "x" + std::to_string(pk);
  s.p = pm * pn * pk;
  Placement pa{"A", {}, {}}, pb{"B", {}, {}}, pc{"C", {}, {}};
  // Each block is shared round-robin by the processors that need it.
  for (long i = 0; i < m; ++i)
    for (long l = 0; l < k; ++l) {
      const long e = (i % bm) * bk + (l % bk);
      pa.elements.push_back(A(i, l));
      pa.owners.push_back(proc(i / bm, e % pn, l / bk));
    }
  for (long l = 0; l < k; ++l)
    for (long j = 0; j < n; ++j) {
      const long e = (l % bk) * bn + (j % bn);
      pb.elements.push_back(B(l, j));
      pb.owners.push_back(proc(e % pm, j / bn, l / bk));
    }
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) {
      const long e = (i % bm) * bn + (j % bn);
      pc.elements.push_back(C(i, j));
      pc.owners.push_back(proc(i / bm, j / bn, e % pk));
    }
  s.inputs = {pa, pb};
  s.outputs = {pc};

  // Operand exchange inside each fiber.
  for (std::size_t x = 0; x < pa.elements.size(); ++x) {
    const int owner = pa.owners[x];
    const long a = owner / (pn * pk), c = owner % pk;
    for (long b = 0; b < pn; ++b)
      if (proc(a, b, c) != owner) s.events.push_back(ParEvent::send(pa.elements[x], owner, proc(a, b, c)));
  }
  for (std::size_t x = 0; x < pb.elements.size(); ++x) {
    const int owner = pb.owners[x];
    const long b = (owner / pk) % pn, c = owner % pk;
    for (long a = 0; a < pm; ++a)
      if (proc(a, b, c) != owner) s.events.push_back(ParEvent::send(pb.elements[x], owner, proc(a, b, c)));
  }

  Addr next = c0 + static_cast<Addr>(m * n);
  std::vector<Addr> partial(static_cast<std::size_t>(m * n * pk));
  auto slot = [&](long i, long j, long c) -> Addr& {
    return partial[static_cast<std::size_t>((i * n + j) * pk + c)];
  };
  for (long a = 0; a < pm; ++a)
    for (long b = 0; b < pn; ++b)
      for (long c = 0; c < pk; ++c) {
        const int q = proc(a, b, c);
        for (long i = a * bm; i < (a + 1) * bm; ++i)
          for (long j = b * bn; j < (b + 1) * bn; ++j) {
            Addr acc = 0;
            for (long l = c * bk; l < (c + 1) * bk; ++l) {
              const bool last = l + 1 == (c + 1) * bk;
              const bool final = last && pk == 1;
              const Addr prod = (l == c * bk && final) ? C(i, j) : next++;
              s.events.push_back(ParEvent::compute(q, prod, A(i, l), B(l, j), OpKind::Mul));
              if (l == c * bk) {
                acc = prod;
                continue;
              }
              const Addr sum = final ? C(i, j) : next++;
              s.events.push_back(ParEvent::compute(q, sum, acc, prod, OpKind::Add));
              acc = sum;
            }
            slot(i, j, c) = acc;
          }
      }
  // Partial sums over the k fiber are reduced at the output's owner.
  if (pk > 1) {
    for (std::size_t x = 0; x < pc.elements.size(); ++x) {
      const long i = static_cast<long>(x) / n, j = static_cast<long>(x) % n;
      const int owner = pc.owners[x];
      const long a = i / bm, b = j / bn, own_c = owner % pk;
      Addr acc = slot(i, j, own_c);
      long remaining = pk - 1;
      for (long c = 0; c < pk; ++c) {
        if (c == own_c) continue;
        s.events.push_back(ParEvent::send(slot(i, j, c), proc(a, b, c), owner));
        const Addr sum = --remaining == 0 ? C(i, j) : next++;
        s.events.push_back(ParEvent::compute(owner, sum, acc, slot(i, j, c), OpKind::Add));
        acc = sum;
      }
    }
  }
  return s;
}

namespace {

// Most balanced f1 <= f2 <= f3 with f1 f2 f3 = p.
std::array<int, 3> balanced3(int p) {
  std::array<int, 3> best = {1, 1, p};
  for (int f1 = 1; f1 * f1 * f1 <= p; ++f1) {
    if (p % f1) continue;
    for (int f2 = f1; f1 * f2 * f2 <= p; ++f2) {
      if ((p / f1) % f2) continue;
      const int f3 = p / f1 / f2;
      if (f3 - f1 < best[2] - best[0]) best = {f1, f2, f3};
    }
  }
  return best;
}

}  // namespace

ParSchedule schedule_mm(Grid grid, long m, long n, long k, int p) {
  require(p >= 1, "processor count must be >= 1");
  std::array<int, 3> f = {1, 1, 1};  // ascending factors
  switch (grid) {
    case Grid::OneD:
      f = {1, 1, p};
      break;
    case Grid::TwoD: {
      int f1 = 1;
      for (int d = 1; d * d <= p; ++d)
        if (p % d == 0) f1 = d;
      f = {1, f1, p / f1};
      break;
    }
    case Grid::ThreeD:
      f = balanced3(p);
      break;
  }
  // Longest axis gets the largest factor; ties keep m, n, k order.
  std::array<int, 3> order = {0, 1, 2};
  const std::array<long, 3> len = {m, n, k};
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return len[x] > len[y]; });
  std::array<int, 3> dims = {1, 1, 1};
  for (int r = 0; r < 3; ++r) dims[order[r]] = f[2 - r];
  ParSchedule s = schedule_mm_grid(m, n, k, dims[0], dims[1], dims[2]);
  s.name = std::string("mm-") + to_string(grid) + " " + s.name.substr(std::string("mm-grid ").size());
  return s;
}

}  // namespace tclb
