#include "tclb/random.hpp"

#include "tclb/common.hpp"

#include <algorithm>
#include <numeric>

namespace tclb {

std::uint64_t Rng::below(std::uint64_t bound) {
  require(bound > 0, "Rng::below needs a positive bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

long Rng::range(long lo, long hi) {
  require(lo <= hi, "Rng::range needs lo <= hi");
  const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(below(width));
}

std::vector<std::size_t> Rng::subset_of_size(std::size_t n, std::size_t k) {
  require(k <= n, "subset larger than ground set");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> Rng::subset_by_size(std::size_t n) {
  const auto k = static_cast<std::size_t>(below(n + 1));
  return subset_of_size(n, k);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tclb
