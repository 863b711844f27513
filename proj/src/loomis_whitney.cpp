#include "tclb/expansion.hpp"

#include <set>

namespace tclb {

namespace {

BigInt pow_big(std::size_t base, unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

}  // namespace

LoomisWhitneyResult loomis_whitney_check(const std::vector<IndexTuple>& V, int r) {
  LoomisWhitneyResult out;
  out.r = r;
  out.m = V.empty() ? r : static_cast<int>(V.front().size());
  for (const auto& t : V)
    require(static_cast<int>(t.size()) == out.m, "tuples have different lengths");
  require(r >= 1 && r <= out.m, "projection order must satisfy 1 <= r <= m");

  const std::set<IndexTuple> distinct(V.begin(), V.end());
  out.size = distinct.size();

  std::set<IndexTuple> all;
  BigInt product = 1;
  for (const auto& positions : position_subsets(out.m, r)) {
    std::set<IndexTuple> projected;
    for (const auto& t : distinct) {
      IndexTuple p;
      p.reserve(positions.size());
      for (int i : positions) p.push_back(t[static_cast<std::size_t>(i)]);
      all.insert(p);
      projected.insert(std::move(p));
    }
    out.projection_sizes.push_back(projected.size());
    product *= static_cast<unsigned long>(projected.size());
  }
  out.union_size = all.size();

  const unsigned long exponent =
      to_u64(binomial(static_cast<unsigned long>(out.m - 1), static_cast<unsigned long>(r - 1)));
  const BigInt lhs_product = pow_big(out.size, exponent);
  out.product_form = lhs_product <= product;
  out.product_tight = lhs_product == product;

  const BigInt lhs_union = pow_big(out.size, static_cast<unsigned long>(r));
  const BigInt rhs_union = pow_big(out.union_size, static_cast<unsigned long>(out.m));
  out.union_form = lhs_union <= rhs_union;
  out.union_tight = lhs_union == rhs_union;
  return out;
}

}  // namespace tclb
