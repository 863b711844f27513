#include "tclb/exact_value.hpp"

#include <cmath>
#include <cstdio>

namespace tclb {

namespace {

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

int sign(int x) { return (x > 0) - (x < 0); }

// Compares R^(1/q) with a non-negative integer d.
int compare_root_to_integer(const BigInt& R, unsigned long q, const BigInt& d) {
  return sign(cmp(R, pow_big(d, q)));
}

constexpr unsigned long kMaxRefineBits = 1ul << 14;

}  // namespace

ExactValue::ExactValue(const BigInt& integer) : L_(integer) {}

ExactValue ExactValue::root(const BigInt& radicand, unsigned long q) {
  require(radicand >= 0, "radicand must be non-negative");
  require(q >= 1, "root index must be positive");
  ExactValue out;
  out.R_ = radicand;
  out.q_ = q;
  out.normalize();
  return out;
}

ExactValue ExactValue::power(const BigInt& base, unsigned long p, unsigned long q) {
  return root(pow_big(base, p), q);
}

ExactValue ExactValue::plus(const BigInt& integer) const {
  ExactValue out = *this;
  out.L_ += integer;
  return out;
}

void ExactValue::normalize() {
  if (R_ == 0) {
    q_ = 1;
    return;
  }
  BigInt r;
  if (q_ == 1 || mpz_root(r.get_mpz_t(), R_.get_mpz_t(), q_) != 0) {
    L_ += (q_ == 1) ? R_ : r;
    R_ = 0;
    q_ = 1;
  }
}

int ExactValue::compare(const ExactValue& o) const {
  if (R_ == 0 && o.R_ == 0) return sign(cmp(L_, o.L_));
  if (L_ == o.L_) return sign(cmp(pow_big(R_, o.q_), pow_big(o.R_, q_)));
  if (o.R_ == 0) {
    const BigInt d = o.L_ - L_;
    if (d < 0) return 1;
    return compare_root_to_integer(R_, q_, d);
  }
  if (R_ == 0) {
    const BigInt d = L_ - o.L_;
    if (d < 0) return -1;
    return -compare_root_to_integer(o.R_, o.q_, d);
  }
  // Both roots irrational: scaled by 2^k each lies strictly inside (f, f+1).
  for (unsigned long k = 16; k <= kMaxRefineBits; k *= 2) {
    auto bracket = [k](const BigInt& L, const BigInt& R, unsigned long q) {
      BigInt scaled = R;
      mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), k * q);
      BigInt f;
      mpz_root(f.get_mpz_t(), scaled.get_mpz_t(), q);
      BigInt base = L;
      mpz_mul_2exp(base.get_mpz_t(), base.get_mpz_t(), k);
      return BigInt(base + f);
    };
    const BigInt lo_x = bracket(L_, R_, q_);
    const BigInt lo_y = bracket(o.L_, o.R_, o.q_);
    if (lo_x + 1 <= lo_y) return -1;
    if (lo_y + 1 <= lo_x) return 1;
  }
  throw std::runtime_error("cannot separate " + str() + " and " + o.str());
}

double ExactValue::approx() const {
  double out = L_.get_d();
  if (R_ != 0) out += std::pow(R_.get_d(), 1.0 / static_cast<double>(q_));
  return out;
}

std::string ExactValue::str() const {
  if (R_ == 0) return L_.get_str();
  std::string root = R_.get_str() + "^(1/" + std::to_string(q_) + ")";
  if (L_ == 0) return root;
  return L_.get_str() + " + " + root;
}

const ExactValue& min_value(const ExactValue& x, const ExactValue& y) {
  return y.compare(x) < 0 ? y : x;
}

const ExactValue& max_value(const ExactValue& x, const ExactValue& y) {
  return y.compare(x) > 0 ? y : x;
}

}  // namespace tclb
