#pragma once

#include "tclb/combinatorics.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tclb {

// Packed symmetric tensor: one value per increasing index tuple, by rank.
class SymTensor {
 public:
  SymTensor(int n, int d);

  int n() const { return n_; }
  int order() const { return d_; }
  std::size_t size() const { return values_.size(); }

  // Any permutation of the index reads the same entry.
  const Scalar& get(const IndexTuple& idx) const;
  void set(const IndexTuple& idx, const Scalar& value);

  const Scalar& at_rank(std::size_t r) const { return values_.at(r); }
  Scalar& at_rank(std::size_t r) { return values_.at(r); }

  const std::vector<Scalar>& values() const { return values_; }
  std::vector<Scalar>& values() { return values_; }

  bool operator==(const SymTensor& other) const;

 private:
  std::size_t rank_of(const IndexTuple& idx) const;

  int n_;
  int d_;
  std::vector<Scalar> values_;
};

// Full tensor over [n]^d, row-major.
class DenseTensor {
 public:
  DenseTensor(int n, int d);

  int n() const { return n_; }
  int order() const { return d_; }
  std::size_t size() const { return values_.size(); }

  const Scalar& get(const IndexTuple& idx) const;
  void set(const IndexTuple& idx, const Scalar& value);
  Scalar& at(const IndexTuple& idx);

  const Scalar& at_flat(std::size_t r) const { return values_.at(r); }
  Scalar& at_flat(std::size_t r) { return values_.at(r); }

  const std::vector<Scalar>& values() const { return values_; }
  std::vector<Scalar>& values() { return values_; }

  bool operator==(const DenseTensor& other) const;

 private:
  std::size_t offset(const IndexTuple& idx) const;

  int n_;
  int d_;
  std::vector<Scalar> values_;
};

DenseTensor unpack(const SymTensor& t);
// Throws NotSymmetricError naming two entries that differ.
SymTensor pack(const DenseTensor& t);
bool is_symmetric(const DenseTensor& t);

// Entries drawn from [-9, 9].
SymTensor random_symmetric(int n, int d, std::uint64_t seed);
DenseTensor random_dense(int n, int d, std::uint64_t seed);

void write_symtensor(std::ostream& os, const SymTensor& t);
SymTensor read_symtensor(std::istream& is);

}  // namespace tclb
