#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tclb {

// mt19937_64 output is fixed by the standard; the mappings below avoid the
// implementation-defined std distributions so streams match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  long range(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

  // Uniform size in [0, n], then a uniform subset of that size, sorted.
  std::vector<std::size_t> subset_by_size(std::size_t n);
  // Uniform k-subset of [0, n), sorted.
  std::vector<std::size_t> subset_of_size(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Independent stream for sub-task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace tclb
