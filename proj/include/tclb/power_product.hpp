#pragma once

#include "tclb/common.hpp"

#include <compare>
#include <string>

namespace tclb {

// R^(1/q) for a non-negative rational R. Kept with the smallest q for which
// the value is exact, so q == 1 means the value is rational.
class PowerValue {
 public:
  PowerValue() = default;
  PowerValue(const Scalar& rational);  // NOLINT: implicit by design
  PowerValue(long integer) : PowerValue(Scalar(integer)) {}  // NOLINT

  static PowerValue root(const Scalar& radicand, unsigned long q);
  // base^(p/q)
  static PowerValue power(const Scalar& base, unsigned long p, unsigned long q);

  PowerValue operator*(const PowerValue& o) const;
  PowerValue operator/(const PowerValue& o) const;

  const Scalar& radicand() const { return R_; }
  unsigned long root_index() const { return q_; }
  bool is_rational() const { return q_ == 1; }
  const Scalar& rational() const;

  int compare(const PowerValue& o) const;
  friend bool operator==(const PowerValue& x, const PowerValue& y) { return x.compare(y) == 0; }
  friend std::strong_ordering operator<=>(const PowerValue& x, const PowerValue& y) {
    const int c = x.compare(y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double approx() const;
  // Exact form: "r" or "(r)^(1/q)" with r an integer or num/den.
  std::string str() const;
  // Six significant digits.
  std::string decimal() const;

 private:
  void normalize();

  Scalar R_ = 0;
  unsigned long q_ = 1;
};

Scalar pow_scalar(const Scalar& base, unsigned long e);

}  // namespace tclb
