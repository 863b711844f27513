#include "tclb/bilinear.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tclb {

namespace {

// Fraction-free elimination; every division is exact because each entry of
// the working matrix is a minor of the input.
std::size_t bareiss_rank(std::vector<std::vector<BigInt>>& m, std::size_t ncols) {
  const std::size_t nrows = m.size();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && m[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        BigInt x = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t exact_rank(const SparseExactMatrix& m, const std::vector<std::size_t>& cols) {
  bool single = true;
  for (std::size_t c : cols) {
    require(c < m.cols(), "column index out of range");
    single = single && m.column(c).size() <= 1;
  }
  if (single) {
    std::set<std::size_t> rows;
    for (std::size_t c : cols)
      if (!m.column(c).empty()) rows.insert(m.column(c).front().first);
    return rows.size();
  }

  std::vector<std::size_t> used_rows;
  for (std::size_t c : cols)
    for (const auto& e : m.column(c)) used_rows.push_back(e.first);
  std::sort(used_rows.begin(), used_rows.end());
  used_rows.erase(std::unique(used_rows.begin(), used_rows.end()), used_rows.end());

  // Columns scaled by their denominator lcm; rank is unchanged.
  std::vector<std::vector<BigInt>> dense(used_rows.size(), std::vector<BigInt>(cols.size(), 0));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    BigInt lcm = 1;
    for (const auto& e : m.column(cols[k])) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.second.get_den_mpz_t());
    for (const auto& e : m.column(cols[k])) {
      const std::size_t row = static_cast<std::size_t>(
          std::lower_bound(used_rows.begin(), used_rows.end(), e.first) - used_rows.begin());
      dense[row][k] = e.second.get_num() * (lcm / e.second.get_den());
    }
  }
  return bareiss_rank(dense, cols.size());
}

std::size_t exact_rank(const SparseExactMatrix& m) {
  std::vector<std::size_t> cols(m.cols());
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return exact_rank(m, cols);
}

}  // namespace tclb
