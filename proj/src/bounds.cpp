#include "tclb/bounds.hpp"

#include <algorithm>
#include <array>

namespace tclb {

namespace {

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Scalar ratio(const BigInt& num, const BigInt& den) {
  Scalar out(num, den);
  out.canonicalize();
  return out;
}

Scalar ratio(long num, long den) { return ratio(BigInt(num), BigInt(den)); }

BigInt npow(const ContractionSpec& spec, int e) {
  return pow_big(BigInt(spec.n), static_cast<unsigned long>(e));
}

const PowerValue& larger(const PowerValue& x, const PowerValue& y) {
  return y.compare(x) > 0 ? y : x;
}

// Sequential bound shape: max(flop, io), regime names the larger term.
BoundValue flop_or_io(const std::string& formula, const PowerValue& flop, const PowerValue& io) {
  BoundValue out;
  out.formula_id = formula;
  out.terms = {{"flop", flop}, {"io", io}};
  out.value = larger(flop, io);
  out.regime = flop.compare(io) >= 0 ? "flop" : "io";
  return out;
}

std::array<int, 3> sorted_orders(const ContractionSpec& spec) {
  std::array<int, 3> e = {spec.s, spec.t, spec.v};
  std::sort(e.begin(), e.end());
  return e;
}

SymExpr io_shape(const ContractionSpec& spec) {
  return SymExpr::max_of({SymExpr::leaf(spec.order_a(), 0), SymExpr::leaf(spec.order_b(), 0),
                          SymExpr::leaf(spec.order_c(), 0)});
}

// min(xy, x (yz/p)^(1/2), (xyz/p)^(2/3)) with x <= y <= z powers of n.
SymExpr w_o_shape(const ContractionSpec& spec) {
  const auto e = sorted_orders(spec);
  const Scalar a = e[0], b = e[1], c = e[2];
  return SymExpr::min_of({SymExpr::leaf(a + b, 0), SymExpr::leaf(a + (b + c) / 2, ratio(-1, 2)),
                          SymExpr::leaf(ratio(2 * spec.omega(), 3), ratio(-2, 3))});
}

void require_positive(const BigInt& x, const char* what) {
  require(x > 0, std::string(what) + " must be positive");
}

}  // namespace

BoundValue q_mm(const BigInt& m, const BigInt& n, const BigInt& k, const BigInt& H) {
  require_positive(m, "m");
  require_positive(n, "n");
  require_positive(k, "k");
  require_positive(H, "H");
  const BigInt flop2 = 2 * m * n * k;
  const PowerValue flop = PowerValue::root(ratio(flop2 * flop2, H), 2);
  const PowerValue io = Scalar(m * k + k * n + m * n);
  return flop_or_io("mm-sequential", flop, io);
}

BoundValue w_mm(const BigInt& m, const BigInt& n, const BigInt& k, const BigInt& p) {
  require_positive(m, "m");
  require_positive(n, "n");
  require_positive(k, "k");
  require_positive(p, "p");
  std::array<BigInt, 3> d = {m, n, k};
  std::sort(d.begin(), d.end());
  const BigInt &x = d[0], &y = d[1], &z = d[2];
  const PowerValue one_d = Scalar(x * y);
  const PowerValue two_d = PowerValue::root(ratio(x * x * y * z, p), 2);
  const Scalar volume = ratio(x * y * z, p);
  const PowerValue three_d = PowerValue::root(volume * volume, 3);
  BoundValue out;
  out.formula_id = "mm-parallel";
  out.constant_free = true;
  out.terms = {{"1D", one_d}, {"2D", two_d}, {"3D", three_d}};
  // p > yz/x^2, then yz/x^2 >= p > z/y, then z/y >= p.
  if (p * x * x > y * z) {
    out.regime = "3D";
    out.value = three_d;
  } else if (p * y > z) {
    out.regime = "2D";
    out.value = two_d;
  } else {
    out.regime = "1D";
    out.value = one_d;
  }
  return out;
}

BoundValue q_nonsym(const ContractionSpec& spec, const BigInt& H) {
  validate(spec);
  BoundValue out = q_mm(npow(spec, spec.s), npow(spec, spec.t), npow(spec, spec.v), H);
  out.formula_id = "nonsym-sequential";
  out.symbolic = SymExpr::max_of({SymExpr::leaf(spec.omega(), ratio(-1, 2)), io_shape(spec)});
  return out;
}

BoundValue w_nonsym(const ContractionSpec& spec, const BigInt& p) {
  validate(spec);
  BoundValue out = w_mm(npow(spec, spec.s), npow(spec, spec.t), npow(spec, spec.v), p);
  out.formula_id = "nonsym-parallel";
  out.symbolic = w_o_shape(spec);
  return out;
}

BoundValue q_direct(const ContractionSpec& spec, const BigInt& H) {
  validate(spec);
  require_positive(H, "H");
  const auto b = [](int x, int y) {
    return binomial(static_cast<unsigned long>(x), static_cast<unsigned long>(y));
  };
  const BigInt q2 = b(spec.s + spec.v, spec.s) * b(spec.v + spec.t, spec.v) * b(spec.s + spec.t, spec.s);
  const BigInt flop2 = 2 * count_multisets(spec.n, spec.s) * count_multisets(spec.n, spec.t) *
                       count_multisets(spec.n, spec.v);
  const PowerValue flop = PowerValue::root(ratio(flop2 * flop2, q2 * H), 2);
  const PowerValue io = Scalar(count_multisets(spec.n, spec.order_a()) +
                               count_multisets(spec.n, spec.order_b()) +
                               count_multisets(spec.n, spec.order_c()));
  BoundValue out = flop_or_io("direct-sequential", flop, io);
  out.symbolic = SymExpr::max_of({SymExpr::leaf(spec.omega(), ratio(-1, 2)), io_shape(spec)});
  return out;
}

BoundValue w_direct(const ContractionSpec& spec, const BigInt& p) {
  validate(spec);
  const auto e = sorted_orders(spec);
  BoundValue out = w_mm(npow(spec, e[0]), npow(spec, e[1]), npow(spec, e[2]), p);
  out.formula_id = "direct-parallel";
  out.constant_free = true;
  out.symbolic = w_o_shape(spec);
  if (classify(spec) == SpecClass::MatrixVectorLike) {
    const int top = e[2];
    const PowerValue second = PowerValue::root(
        pow_scalar(ratio(npow(spec, spec.omega()), p), static_cast<unsigned long>(top)),
        static_cast<unsigned long>(spec.omega()));
    out.terms.push_back({"mv", second});
    if (second.compare(out.value) > 0) {
      out.value = second;
      out.regime = "mv";
    }
    out.symbolic = SymExpr::max_of(
        {*out.symbolic, SymExpr::leaf(top, ratio(-top, spec.omega()))});
  }
  return out;
}

BoundValue q_sympres(const ContractionSpec& spec, const BigInt& H) {
  validate(spec);
  require_positive(H, "H");
  const PowerValue io = Scalar(count_multisets(spec.n, spec.order_a()) +
                               count_multisets(spec.n, spec.order_b()) +
                               count_multisets(spec.n, spec.order_c()));
  const int kappa = spec.kappa();
  const int omega = spec.omega();
  if (kappa == 0) {
    BoundValue out = flop_or_io("sympres-sequential", PowerValue(0), io);
    out.symbolic = io_shape(spec);
    return out;
  }
  // 2 M(n,w) H / (3 C(w,kappa) H)^(w/kappa)
  const Scalar numerator(2 * count_multisets(spec.n, omega) * H);
  const Scalar denominator(3 * binomial(static_cast<unsigned long>(omega),
                                        static_cast<unsigned long>(kappa)) * H);
  const PowerValue flop =
      PowerValue::root(pow_scalar(numerator, static_cast<unsigned long>(kappa)) /
                           pow_scalar(denominator, static_cast<unsigned long>(omega)),
                       static_cast<unsigned long>(kappa));
  BoundValue out = flop_or_io("sympres-sequential", flop, io);
  out.symbolic = SymExpr::max_of(
      {SymExpr::leaf(omega, 1 - ratio(omega, kappa)), io_shape(spec)});
  return out;
}

BoundValue w_sympres(const ContractionSpec& spec, const BigInt& p) {
  validate(spec);
  require_positive(p, "p");
  const SpecClass cls = classify(spec);
  require(cls != SpecClass::Degenerate, "sympres parallel bound needs at most one of s, t, v zero");
  const int omega = spec.omega();
  const int e = cls == SpecClass::MatrixMatrixLike ? spec.kappa() : std::max({spec.s, spec.t, spec.v});
  BoundValue out;
  out.formula_id = "sympres-parallel";
  out.regime = cls == SpecClass::MatrixMatrixLike ? "mm" : "mv";
  out.value = PowerValue::root(
      pow_scalar(ratio(npow(spec, omega), p), static_cast<unsigned long>(e)),
      static_cast<unsigned long>(omega));
  out.terms = {{out.regime, out.value}};
  out.constant_free = true;
  out.symbolic = SymExpr::leaf(e, ratio(-e, omega));
  return out;
}

}  // namespace tclb
