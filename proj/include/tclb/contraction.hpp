#pragma once

#include "tclb/tensors.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace tclb {

enum class AlgorithmId { Nonsym, Direct, Sympres };

const char* to_string(AlgorithmId alg);
AlgorithmId parse_algorithm(const std::string& name);

struct MultCount {
  BigInt high_order = 0;
  BigInt correction = 0;

  BigInt total() const { return high_order + correction; }
};

DenseTensor contract_oracle(const DenseTensor& A, const DenseTensor& B,
                            const ContractionSpec& spec, bool symmetrize);

DenseTensor contract_nonsym(const DenseTensor& A, const DenseTensor& B,
                            const ContractionSpec& spec,
                            std::uint64_t* products = nullptr);

SymTensor contract_direct(const SymTensor& A, const SymTensor& B,
                          const ContractionSpec& spec,
                          std::uint64_t* products = nullptr);

struct SympresStats {
  std::uint64_t stage1_products = 0;
  std::uint64_t correction_products = 0;
};

SymTensor contract_sympres(const SymTensor& A, const SymTensor& B,
                           const ContractionSpec& spec,
                           SympresStats* stats = nullptr);

MultCount count_multiplications(AlgorithmId alg, const ContractionSpec& spec);

// One bilinear product: (sum a.coef*A[a.index]) * (sum b.coef*B[b.index]),
// added with weight c.coef into each C[c.index]. Indices are ranks in the
// algorithm's packed (or flat, for Nonsym) domains.
struct Term {
  std::size_t index;
  std::int64_t coef;
};

struct ProductColumn {
  std::vector<Term> a;
  std::vector<Term> b;
  std::vector<Term> c;
};

struct SympresPlan {
  ContractionSpec spec;
  bool delegated = false;  // degenerate spec, columns are the direct ones
  std::vector<ProductColumn> stage1;
  // Products whose c-weights are subtracted from the stage-1 result.
  std::vector<ProductColumn> correction;
  // Correction products found by the greedy cover rather than the closed form.
  std::size_t fallback_products = 0;
};

// Built once per spec and cached.
std::shared_ptr<const SympresPlan> sympres_plan(const ContractionSpec& spec);

std::vector<ProductColumn> nonsym_columns(const ContractionSpec& spec);
std::vector<ProductColumn> direct_columns(const ContractionSpec& spec);
// Stage-1 columns followed by correction columns with negated c-weights.
std::vector<ProductColumn> sympres_columns(const ContractionSpec& spec);
std::vector<ProductColumn> algorithm_columns(AlgorithmId alg, const ContractionSpec& spec);

}  // namespace tclb
