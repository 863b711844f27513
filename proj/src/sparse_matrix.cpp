#include "tclb/bilinear.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

namespace tclb {

SparseExactMatrix::SparseExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), columns_(cols) {}

SparseExactMatrix SparseExactMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                                   const std::vector<Triplet>& entries) {
  SparseExactMatrix out(rows, cols);
  std::vector<std::map<std::size_t, Scalar>> acc(cols);
  for (const auto& e : entries) {
    require(e.row < rows && e.col < cols, "matrix entry out of range");
    acc[e.col][e.row] += e.value;
  }
  for (std::size_t c = 0; c < cols; ++c)
    for (auto& [r, value] : acc[c])
      if (value != 0) out.columns_[c].emplace_back(r, std::move(value));
  return out;
}

std::size_t SparseExactMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.size();
  return total;
}

Scalar SparseExactMatrix::at(std::size_t r, std::size_t c) const {
  require(r < rows_ && c < cols(), "matrix index out of range");
  const auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

std::vector<Triplet> SparseExactMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, value] : columns_[c]) out.push_back({r, c, value});
  std::sort(out.begin(), out.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  return out;
}

SparseExactMatrix SparseExactMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  SparseExactMatrix out(rows_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) out.columns_[k] = columns_.at(cols[k]);
  return out;
}

bool SparseExactMatrix::operator==(const SparseExactMatrix& other) const {
  return rows_ == other.rows_ && columns_ == other.columns_;
}

void write_matrix(std::ostream& os, const SparseExactMatrix& m) {
  os << "sparsemat " << m.rows() << " " << m.cols() << "\n";
  for (const auto& t : m.triplets())
    os << t.row << " " << t.col << " " << to_fraction_string(t.value) << "\n";
}

SparseExactMatrix read_matrix(std::istream& is) {
  std::string magic;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(is >> magic >> rows >> cols) || magic != "sparsemat")
    throw PreconditionError("expected header 'sparsemat rows cols'");
  std::vector<Triplet> entries;
  std::size_t r = 0;
  std::size_t c = 0;
  std::string value;
  while (is >> r >> c >> value) entries.push_back({r, c, parse_scalar(value)});
  require(is.eof(), "malformed matrix entry line");
  return SparseExactMatrix::from_triplets(rows, cols, entries);
}

}  // namespace tclb
