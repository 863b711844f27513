#include "tclb/power_product.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace tclb {

namespace {

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

bool exact_root(const BigInt& x, unsigned long k, BigInt& out) {
  return mpz_root(out.get_mpz_t(), x.get_mpz_t(), k) != 0;
}

double log_big(const BigInt& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

Scalar pow_scalar(const Scalar& base, unsigned long e) {
  Scalar out(pow_big(base.get_num(), e), pow_big(base.get_den(), e));
  out.canonicalize();
  return out;
}

PowerValue::PowerValue(const Scalar& rational) : R_(rational) {
  require(rational >= 0, "power values must be non-negative");
}

PowerValue PowerValue::root(const Scalar& radicand, unsigned long q) {
  require(radicand >= 0, "radicand must be non-negative");
  require(q >= 1, "root index must be positive");
  PowerValue out;
  out.R_ = radicand;
  out.R_.canonicalize();
  out.q_ = q;
  out.normalize();
  return out;
}

PowerValue PowerValue::power(const Scalar& base, unsigned long p, unsigned long q) {
  return root(pow_scalar(base, p), q);
}

void PowerValue::normalize() {
  if (R_ == 0) {
    q_ = 1;
    return;
  }
  for (unsigned long k = q_; k >= 2; --k) {
    if (q_ % k != 0) continue;
    BigInt num, den;
    if (exact_root(R_.get_num(), k, num) && exact_root(R_.get_den(), k, den)) {
      R_ = Scalar(num, den);
      q_ /= k;
      normalize();
      return;
    }
  }
}

PowerValue PowerValue::operator*(const PowerValue& o) const {
  const unsigned long q = std::lcm(q_, o.q_);
  return root(pow_scalar(R_, q / q_) * pow_scalar(o.R_, q / o.q_), q);
}

PowerValue PowerValue::operator/(const PowerValue& o) const {
  require(o.R_ != 0, "division by zero power value");
  const unsigned long q = std::lcm(q_, o.q_);
  return root(pow_scalar(R_, q / q_) / pow_scalar(o.R_, q / o.q_), q);
}

const Scalar& PowerValue::rational() const {
  require(q_ == 1, "value " + str() + " is irrational");
  return R_;
}

int PowerValue::compare(const PowerValue& o) const {
  const int c = cmp(pow_scalar(R_, o.q_), pow_scalar(o.R_, q_));
  return (c > 0) - (c < 0);
}

double PowerValue::approx() const {
  if (R_ == 0) return 0.0;
  const double log_value = (log_big(R_.get_num()) - log_big(R_.get_den())) / static_cast<double>(q_);
  return std::exp(log_value);
}

std::string PowerValue::str() const {
  const std::string base = to_string(R_);
  if (q_ == 1) return base;
  return "(" + base + ")^(1/" + std::to_string(q_) + ")";
}

std::string PowerValue::decimal() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", approx());
  return buf;
}

}  // namespace tclb
