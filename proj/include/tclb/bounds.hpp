#pragma once

#include "tclb/combinatorics.hpp"
#include "tclb/power_product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tclb {

// coef * n^n_exp * x^x_exp, where x is H for vertical and p for horizontal
// bounds.
struct Monomial {
  Scalar coef = 1;
  Scalar n_exp = 0;
  Scalar x_exp = 0;

  bool operator==(const Monomial&) const = default;
};

// Constant-free asymptotic shape of a bound. Sums are kept as Max.
struct SymExpr {
  enum class Kind { Term, Max, Min };
  Kind kind = Kind::Term;
  Monomial term;
  std::vector<SymExpr> children;

  static SymExpr leaf(Scalar n_exp, Scalar x_exp, Scalar coef = 1);
  static SymExpr max_of(std::vector<SymExpr> children);
  static SymExpr min_of(std::vector<SymExpr> children);

  // Exponent of n when x = n^theta.
  Scalar exponent_at(const Scalar& theta) const;
};

// The single term equal to expr for every x = n^theta with theta in
// [0, theta_max], if one exists.
std::optional<Monomial> simplify(const SymExpr& expr, const Scalar& theta_max);

struct BoundTerm {
  std::string name;
  PowerValue value;
};

struct BoundValue {
  PowerValue value;
  std::string formula_id;
  std::string regime;          // dominating term or parallel regime; may be empty
  bool constant_free = false;  // bound holds only up to an unstated constant factor
  std::vector<BoundTerm> terms;
  std::optional<SymExpr> symbolic;
};

BoundValue q_mm(const BigInt& m, const BigInt& n, const BigInt& k, const BigInt& H);
BoundValue w_mm(const BigInt& m, const BigInt& n, const BigInt& k, const BigInt& p);

BoundValue q_nonsym(const ContractionSpec& spec, const BigInt& H);
BoundValue w_nonsym(const ContractionSpec& spec, const BigInt& p);
BoundValue q_direct(const ContractionSpec& spec, const BigInt& H);
BoundValue w_direct(const ContractionSpec& spec, const BigInt& p);
BoundValue q_sympres(const ContractionSpec& spec, const BigInt& H);
BoundValue w_sympres(const ContractionSpec& spec, const BigInt& p);

// ---- Asymptotic summary -------------------------------------------------

struct AsymptoticRecord {
  int s = 0;
  int t = 0;
  int v = 0;
  // coef * n^n_exp
  Monomial f_nonsym;
  Monomial f_direct;
  Monomial f_sympres;
  // n^n_exp * H^x_exp, simplified for 1 << H <= n^2
  Monomial q_nonsym_direct;
  Monomial q_sympres;
  // n^n_exp * p^x_exp, simplified for 1 << p <= n
  Monomial w_nonsym;
  Monomial w_direct;
  Monomial w_sympres;
};

std::vector<AsymptoticRecord> asymptotic_table(const std::vector<ContractionSpec>& specs);

// The concrete (s,t,v) rows of the asymptotic summary table.
std::vector<ContractionSpec> table_specs();

// "n^{3}/p^{2/3}" style rendering with variable name x.
std::string render(const Monomial& m, const std::string& x);

std::string table_csv(const std::vector<AsymptoticRecord>& rows);

}  // namespace tclb
