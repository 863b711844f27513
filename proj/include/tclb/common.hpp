#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tclb {

using Scalar = mpq_class;
using BigInt = mpz_class;

// Caller broke a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotSymmetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

// Throws if x does not fit.
std::uint64_t to_u64(const BigInt& x);

std::string to_string(const BigInt& x);
std::string to_string(const Scalar& x);

// Always "num/den", also for integers.
std::string to_fraction_string(const Scalar& x);
Scalar parse_scalar(const std::string& text);

BigInt factorial(unsigned k);
BigInt binomial(unsigned long n, unsigned long k);
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);
std::uint64_t ipow_u64(std::uint64_t base, unsigned exp);

}  // namespace tclb
