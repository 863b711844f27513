#include "tclb/tensors.hpp"

#include "tclb/random.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace tclb {

namespace {

std::string format_tuple(const IndexTuple& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

void check_index(const IndexTuple& idx, int n, int d) {
  require(static_cast<int>(idx.size()) == d, "index length differs from tensor order");
  require_in_range(idx, n);
}

}  // namespace

SymTensor::SymTensor(int n, int d) : n_(n), d_(d) {
  require(n >= 1 && d >= 0, "tensor needs n >= 1 and d >= 0");
  values_.assign(count_multisets_small(n, d), Scalar(0));
}

std::size_t SymTensor::rank_of(const IndexTuple& idx) const {
  check_index(idx, n_, d_);
  return tuple_rank(sorted(idx), n_);
}

const Scalar& SymTensor::get(const IndexTuple& idx) const {
  return values_[rank_of(idx)];
}

void SymTensor::set(const IndexTuple& idx, const Scalar& value) {
  values_[rank_of(idx)] = value;
}

bool SymTensor::operator==(const SymTensor& other) const {
  return n_ == other.n_ && d_ == other.d_ && values_ == other.values_;
}

DenseTensor::DenseTensor(int n, int d) : n_(n), d_(d) {
  require(n >= 1 && d >= 0, "tensor needs n >= 1 and d >= 0");
  values_.assign(ipow_u64(static_cast<std::uint64_t>(n), static_cast<unsigned>(d)),
                 Scalar(0));
}

std::size_t DenseTensor::offset(const IndexTuple& idx) const {
  check_index(idx, n_, d_);
  return flat_index(idx, n_);
}

const Scalar& DenseTensor::get(const IndexTuple& idx) const {
  return values_[offset(idx)];
}

void DenseTensor::set(const IndexTuple& idx, const Scalar& value) {
  values_[offset(idx)] = value;
}

Scalar& DenseTensor::at(const IndexTuple& idx) { return values_[offset(idx)]; }

bool DenseTensor::operator==(const DenseTensor& other) const {
  return n_ == other.n_ && d_ == other.d_ && values_ == other.values_;
}

DenseTensor unpack(const SymTensor& t) {
  DenseTensor out(t.n(), t.order());
  for (std::size_t r = 0; r < out.size(); ++r) {
    const IndexTuple idx = flat_unindex(r, t.n(), t.order());
    out.at_flat(r) = t.get(idx);
  }
  return out;
}

SymTensor pack(const DenseTensor& t) {
  SymTensor out(t.n(), t.order());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const IndexTuple idx = flat_unindex(r, t.n(), t.order());
    const IndexTuple rep = sorted(idx);
    const Scalar& value = t.at_flat(r);
    if (idx == rep) {
      out.set(rep, value);
    } else if (value != t.get(rep)) {
      throw NotSymmetricError("tensor is not symmetric: entry " + format_tuple(idx) +
                              " differs from entry " + format_tuple(rep));
    }
  }
  return out;
}

bool is_symmetric(const DenseTensor& t) {
  for (std::size_t r = 0; r < t.size(); ++r) {
    const IndexTuple idx = flat_unindex(r, t.n(), t.order());
    if (t.at_flat(r) != t.get(sorted(idx))) return false;
  }
  return true;
}

SymTensor random_symmetric(int n, int d, std::uint64_t seed) {
  SymTensor out(n, d);
  Rng rng(seed);
  for (auto& x : out.values()) x = Scalar(rng.range(-9, 9));
  return out;
}

DenseTensor random_dense(int n, int d, std::uint64_t seed) {
  DenseTensor out(n, d);
  Rng rng(seed);
  for (auto& x : out.values()) x = Scalar(rng.range(-9, 9));
  return out;
}

void write_symtensor(std::ostream& os, const SymTensor& t) {
  os << "symtensor " << t.n() << " " << t.order() << "\n";
  for (std::size_t r = 0; r < t.size(); ++r)
    os << r << " " << to_fraction_string(t.at_rank(r)) << "\n";
}

SymTensor read_symtensor(std::istream& is) {
  std::string magic;
  int n = 0;
  int d = 0;
  if (!(is >> magic >> n >> d) || magic != "symtensor")
    throw PreconditionError("expected header 'symtensor n d'");
  SymTensor out(n, d);
  std::vector<bool> seen(out.size(), false);
  std::size_t r = 0;
  std::string value;
  while (is >> r >> value) {
    require(r < out.size(), "tensor entry rank out of range");
    require(!seen[r], "duplicate tensor entry rank");
    seen[r] = true;
    out.at_rank(r) = parse_scalar(value);
  }
  require(is.eof(), "malformed tensor entry line");
  return out;
}

}  // namespace tclb
