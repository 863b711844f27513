#include "tclb/expansion.hpp"

#include <algorithm>

namespace tclb {

namespace {

BigInt binom(int n, int k) {
  return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
}

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

const char* to_string(BoundFamily f) {
  switch (f) {
    case BoundFamily::MM: return "mm";
    case BoundFamily::Direct: return "direct";
    case BoundFamily::DirectMV: return "direct-mv";
    case BoundFamily::Sympres: return "sympres";
  }
  return "?";
}

BoundFamily parse_bound_family(const std::string& name) {
  if (name == "mm") return BoundFamily::MM;
  if (name == "direct") return BoundFamily::Direct;
  if (name == "direct-mv") return BoundFamily::DirectMV;
  if (name == "sympres") return BoundFamily::Sympres;
  throw UsageError("unknown bound family '" + name + "' (expected mm, direct, direct-mv or sympres)");
}

ExpansionBound bound_mm(const BigInt& m, const BigInt& n, const BigInt& k) {
  require(m > 0 && n > 0 && k > 0, "matrix dimensions must be positive");
  ExpansionBound b;
  b.family_ = BoundFamily::MM;
  b.m_ = m;
  b.n_ = n;
  b.k_ = k;
  return b;
}

ExpansionBound bound_direct(const ContractionSpec& spec) {
  validate(spec);
  ExpansionBound b;
  b.family_ = BoundFamily::Direct;
  b.spec_ = spec;
  b.q2_ = binom(spec.s + spec.v, spec.s) * binom(spec.v + spec.t, spec.v) *
          binom(spec.s + spec.t, spec.s);
  return b;
}

ExpansionBound bound_direct_mv(const ContractionSpec& spec) {
  validate(spec);
  require(classify(spec) == SpecClass::MatrixVectorLike,
          "direct-mv bound needs exactly one of s, t, v to be zero");
  ExpansionBound b;
  b.family_ = BoundFamily::DirectMV;
  b.spec_ = spec;
  return b;
}

ExpansionBound bound_sympres(const ContractionSpec& spec) {
  validate(spec);
  require(classify(spec) != SpecClass::Degenerate,
          "sympres bound needs at most one of s, t, v to be zero");
  ExpansionBound b;
  b.family_ = BoundFamily::Sympres;
  b.spec_ = spec;
  return b;
}

ExactValue ExpansionBound::evaluate(const BigInt& dA, const BigInt& dB, const BigInt& dC) const {
  require(dA >= 0 && dB >= 0 && dC >= 0, "expansion arguments must be non-negative");
  const int s = spec_.s, t = spec_.t, v = spec_.v;
  const unsigned long w = static_cast<unsigned long>(spec_.omega());
  switch (family_) {
    case BoundFamily::MM:
      return ExactValue::root(dA * dB * dC, 2);
    case BoundFamily::Direct:
      return ExactValue::root(q2_ * dA * dB * dC, 2);
    case BoundFamily::DirectMV: {
      const BigInt linear = (binom(spec_.omega(), std::min(s, v)) - 1) * dA +
                            (binom(spec_.omega(), std::min(v, t)) - 1) * dB +
                            (binom(spec_.omega(), std::min(s, t)) - 1) * dC;
      const ExactValue ta = ExactValue::power(dA, w, static_cast<unsigned long>(s + v));
      const ExactValue tb = ExactValue::power(dB, w, static_cast<unsigned long>(v + t));
      const ExactValue tc = ExactValue::power(dC, w, static_cast<unsigned long>(s + t));
      return min_value(min_value(ta, tb), tc).plus(linear);
    }
    case BoundFamily::Sympres: {
      const ExactValue ta =
          ExactValue::power(binom(spec_.omega(), t) * dA, w, static_cast<unsigned long>(s + v));
      const ExactValue tb =
          ExactValue::power(binom(spec_.omega(), s) * dB, w, static_cast<unsigned long>(v + t));
      const ExactValue tc =
          ExactValue::power(binom(spec_.omega(), v) * dC, w, static_cast<unsigned long>(s + t));
      return min_value(min_value(ta, tb), tc);
    }
  }
  return ExactValue();
}

std::string ExpansionBound::describe() const {
  switch (family_) {
    case BoundFamily::MM:
      return "mm(" + m_.get_str() + "," + n_.get_str() + "," + k_.get_str() + ")";
    default:
      return std::string(to_string(family_)) + "(" + std::to_string(spec_.s) + "," +
             std::to_string(spec_.t) + "," + std::to_string(spec_.v) + ")";
  }
}

ExactValue max_over_simplex(const ExpansionBound& bound, long H) {
  require(H >= 1, "cache size must be >= 1");
  const BigInt h = H;
  switch (bound.family()) {
    case BoundFamily::MM:
      return ExactValue::root(pow_big(h, 3), 2);
    case BoundFamily::Direct:
      return ExactValue::root(bound.q_squared() * pow_big(h, 3), 2);
    case BoundFamily::Sympres: {
      const ContractionSpec& spec = bound.spec();
      const int kappa = spec.kappa();
      const BigInt base = 3 * binom(spec.omega(), kappa) * h;
      return ExactValue::power(base, static_cast<unsigned long>(spec.omega()),
                               static_cast<unsigned long>(kappa));
    }
    case BoundFamily::DirectMV:
      return max_over_simplex_search(bound, H);
  }
  return ExactValue();
}

ExactValue max_over_simplex_search(const ExpansionBound& bound, long H) {
  require(H >= 1, "cache size must be >= 1");
  const long total = 3 * H;
  ExactValue best;
  for (long a = 0; a <= total; ++a)
    for (long b = 0; a + b <= total; ++b) {
      ExactValue value = bound.evaluate(a, b, total - a - b);
      if (value.compare(best) > 0) best = value;
    }
  return best;
}

}  // namespace tclb
