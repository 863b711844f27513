#pragma once

#include "tclb/common.hpp"

#include <compare>
#include <string>

namespace tclb {

// L + R^(1/q) with integers L, R >= 0 and q >= 1. Perfect q-th powers are
// folded into L, so a nonzero R always denotes an irrational root.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(const BigInt& integer);  // NOLINT: implicit by design
  ExactValue(long integer) : ExactValue(BigInt(integer)) {}  // NOLINT

  static ExactValue root(const BigInt& radicand, unsigned long q);
  // R^(p/q), i.e. root(R^p, q).
  static ExactValue power(const BigInt& base, unsigned long p, unsigned long q);

  ExactValue plus(const BigInt& integer) const;

  const BigInt& integer_part() const { return L_; }
  const BigInt& radicand() const { return R_; }
  unsigned long root_index() const { return q_; }
  bool is_integer() const { return R_ == 0; }

  // Throws std::runtime_error if two distinct-looking values cannot be
  // separated within the refinement budget.
  int compare(const ExactValue& other) const;

  friend bool operator==(const ExactValue& x, const ExactValue& y) { return x.compare(y) == 0; }
  friend std::strong_ordering operator<=>(const ExactValue& x, const ExactValue& y) {
    const int c = x.compare(y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  double approx() const;
  std::string str() const;

 private:
  void normalize();

  BigInt L_ = 0;
  BigInt R_ = 0;
  unsigned long q_ = 1;
};

const ExactValue& min_value(const ExactValue& x, const ExactValue& y);
const ExactValue& max_value(const ExactValue& x, const ExactValue& y);

}  // namespace tclb
