#pragma once

#include "tclb/bilinear.hpp"
#include "tclb/exact_value.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tclb {

enum class BoundFamily { MM, Direct, DirectMV, Sympres };

const char* to_string(BoundFamily f);
BoundFamily parse_bound_family(const std::string& name);

class ExpansionBound {
 public:
  BoundFamily family() const { return family_; }
  const ContractionSpec& spec() const { return spec_; }
  std::array<BigInt, 3> mm_dims() const { return {m_, n_, k_}; }

  ExactValue evaluate(const BigInt& dA, const BigInt& dB, const BigInt& dC) const;
  // The integer q^2 of the direct family; 1 for the others.
  BigInt q_squared() const { return q2_; }
  std::string describe() const;

  friend ExpansionBound bound_mm(const BigInt& m, const BigInt& n, const BigInt& k);
  friend ExpansionBound bound_direct(const ContractionSpec& spec);
  friend ExpansionBound bound_direct_mv(const ContractionSpec& spec);
  friend ExpansionBound bound_sympres(const ContractionSpec& spec);

 private:
  BoundFamily family_ = BoundFamily::MM;
  ContractionSpec spec_;
  BigInt m_ = 1, n_ = 1, k_ = 1;
  BigInt q2_ = 1;
};

ExpansionBound bound_mm(const BigInt& m, const BigInt& n, const BigInt& k);
ExpansionBound bound_direct(const ContractionSpec& spec);
ExpansionBound bound_direct_mv(const ContractionSpec& spec);
ExpansionBound bound_sympres(const ContractionSpec& spec);

// Closed forms for MM, Direct and Sympres (the last is an upper form);
// DirectMV has none and is searched.
ExactValue max_over_simplex(const ExpansionBound& bound, long H);
// Exhaustive search over non-negative integers cA + cB + cC = 3H.
ExactValue max_over_simplex_search(const ExpansionBound& bound, long H);

// ---- Verification -------------------------------------------------------

enum class VerifyMode { Exhaustive, Sampled };

const char* to_string(VerifyMode m);

struct Violation {
  std::vector<std::size_t> columns;
  std::array<std::size_t, 3> ranks{};  // or zeta values for DAG checks
  std::string bound_value;
  std::size_t actual = 0;
};

struct VerificationReport {
  std::string subject;
  std::string bound;
  VerifyMode mode = VerifyMode::Sampled;
  std::uint64_t seed = 0;
  std::size_t subsets_checked = 0;
  std::vector<Violation> violations;
  // Loomis-Whitney checks run on the projection sets of the full column set.
  std::size_t lw_checks = 0;
  std::size_t lw_failures = 0;

  bool passed() const { return violations.empty() && lw_failures == 0; }
  // Exhaustive runs certify the bound; sampled runs only fail to falsify it.
  const char* level() const { return mode == VerifyMode::Exhaustive ? "certified" : "sampled"; }
};

inline constexpr std::size_t kMaxExhaustiveColumns = 14;

// Throws PreconditionError if the family does not belong to alg's
// generating algorithm, or for exhaustive runs above kMaxExhaustiveColumns.
VerificationReport verify_expansion(const BilinearAlg& alg, const ExpansionBound& bound,
                                    VerifyMode mode, std::size_t trials, std::uint64_t seed);

// Index tuple naming each product: (j, l, k) ranks (1-based) for Nonsym and
// Direct, the increasing omega-tuple for Sympres.
std::vector<IndexTuple> column_tuples(const BilinearAlg& alg);

// ---- Loomis-Whitney -----------------------------------------------------

struct LoomisWhitneyResult {
  std::size_t size = 0;
  int m = 0;
  int r = 0;
  // |L_S| for every r-subset S of positions, in lexicographic order.
  std::vector<std::size_t> projection_sizes;
  std::size_t union_size = 0;
  bool product_form = true;  // |V|^C(m-1,r-1) <= prod |L_S|
  bool union_form = true;    // |V|^r <= |L|^m
  bool product_tight = false;
  bool union_tight = false;

  bool passed() const { return product_form && union_form; }
};

LoomisWhitneyResult loomis_whitney_check(const std::vector<IndexTuple>& V, int r);

// ---- Execution DAG ------------------------------------------------------

enum class Part { A, B, C };

struct DagVertex {
  Part part = Part::A;
  bool input = false;
  bool product = false;
  int left = -1;   // predecessors, -1 for inputs
  int right = -1;
};

struct ExecutionDag {
  std::vector<DagVertex> vertices;
  std::vector<std::vector<std::size_t>> successors;
  std::vector<std::size_t> products;  // one per column
  std::vector<int> outputs;           // per C row; -1 when no product reaches it

  std::size_t edge_count() const;
};

// Left-to-right binary summation chains in canonical row/column order.
ExecutionDag build_dag_naive(const BilinearAlg& alg);

struct Zeta {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
};

// Z is a membership mask over the vertices and must exclude inputs.
Zeta zeta(const ExecutionDag& dag, const std::vector<bool>& Z);

VerificationReport check_dag_expansion(const ExecutionDag& dag, const ExpansionBound& bound,
                                       std::size_t trials, std::uint64_t seed);

}  // namespace tclb
