#pragma once

#include "tclb/contraction.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tclb {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

// Column-compressed; entries within a column sorted by row, no stored zeros.
class SparseExactMatrix {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseExactMatrix() = default;
  SparseExactMatrix(std::size_t rows, std::size_t cols);
  // Duplicate positions are summed; zeros dropped.
  static SparseExactMatrix from_triplets(std::size_t rows, std::size_t cols,
                                         const std::vector<Triplet>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nnz() const;

  const std::vector<Entry>& column(std::size_t c) const { return columns_.at(c); }
  Scalar at(std::size_t r, std::size_t c) const;
  // Sorted by (row, col).
  std::vector<Triplet> triplets() const;

  SparseExactMatrix select_columns(const std::vector<std::size_t>& cols) const;

  bool operator==(const SparseExactMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

std::size_t exact_rank(const SparseExactMatrix& m);
// Rank of the submatrix formed by the given columns.
std::size_t exact_rank(const SparseExactMatrix& m, const std::vector<std::size_t>& cols);

enum class EncodingVariant {
  Canonical,  // the tabulated products only
  Full,       // symmetry-preserving: stage 1 plus correction columns
};

struct DomainInfo {
  std::string a;
  std::string b;
  std::string c;
  std::string m;
};

struct BilinearAlg {
  AlgorithmId alg = AlgorithmId::Nonsym;
  ContractionSpec spec;
  EncodingVariant variant = EncodingVariant::Canonical;
  SparseExactMatrix FA;
  SparseExactMatrix FB;
  SparseExactMatrix FC;
  DomainInfo domains;

  std::size_t rank_cols() const { return FA.cols(); }
  std::size_t dim_a() const { return FA.rows(); }
  std::size_t dim_b() const { return FB.rows(); }
  std::size_t dim_c() const { return FC.rows(); }
};

BilinearAlg build_encoding(AlgorithmId alg, const ContractionSpec& spec,
                           EncodingVariant variant = EncodingVariant::Canonical);

BilinearAlg encoding_from_columns(std::size_t ra, std::size_t rb, std::size_t rc,
                                  const std::vector<ProductColumn>& columns);

std::vector<Scalar> apply(const BilinearAlg& alg, const std::vector<Scalar>& a,
                          const std::vector<Scalar>& b);

// Columns must be distinct and in range; their order is kept.
BilinearAlg subset(const BilinearAlg& alg, const std::vector<std::size_t>& columns);

bool is_irreducible(const BilinearAlg& alg);

void write_matrix(std::ostream& os, const SparseExactMatrix& m);
SparseExactMatrix read_matrix(std::istream& is);

}  // namespace tclb
