#pragma once

#include "tclb/bounds.hpp"
#include "tclb/combinatorics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tclb {

using Addr = std::uint64_t;

enum class OpKind { Mul, Add };

enum class SimErrorKind {
  CapacityOverflow,
  OperandNotCached,
  Recomputation,
  UnknownAddress,
  NotCached,
  AlreadyCached,
  MissingOutput,
  NotResident,
  BadProcessor,
  PlacementImbalance,
  MisplacedOutput,
  MemoryOverflow,
};

const char* to_string(SimErrorKind k);

class SimulationError : public std::runtime_error {
 public:
  SimulationError(SimErrorKind kind, std::size_t event_index, const std::string& what);
  SimErrorKind kind() const { return kind_; }
  // Events processed before the failure; equals the event count for
  // end-of-schedule checks.
  std::size_t event_index() const { return index_; }

 private:
  SimErrorKind kind_;
  std::size_t index_;
};

// ---- Sequential cache model -----------------------------------------------

struct CacheEvent {
  enum class Kind { Load, Store, Evict, Compute };
  Kind kind = Kind::Load;
  Addr addr = 0;  // the output for Compute
  Addr a = 0;
  Addr b = 0;
  OpKind op = OpKind::Add;

  static CacheEvent load(Addr x) { return {Kind::Load, x, 0, 0, OpKind::Add}; }
  static CacheEvent store(Addr x) { return {Kind::Store, x, 0, 0, OpKind::Add}; }
  static CacheEvent evict(Addr x) { return {Kind::Evict, x, 0, 0, OpKind::Add}; }
  static CacheEvent compute(Addr out, Addr a, Addr b, OpKind op) {
    return {Kind::Compute, out, a, b, op};
  }
  bool operator==(const CacheEvent&) const = default;
};

struct CacheSchedule {
  std::string name;
  std::vector<CacheEvent> events;
  std::vector<Addr> inputs;   // in slow memory at the start
  std::vector<Addr> outputs;  // must be stored by the end
  // False when no partial sum is shared between distinct operand or output
  // combinations, the setting the symmetry-preserving bound assumes.
  bool reuses_partial_sums = false;
};

struct SimReport {
  std::string schedule;
  std::string model;  // "cache" or "parallel"
  std::uint64_t measured_cost = 0;  // Q or W
  std::uint64_t loads = 0;
  std::uint64_t stores = 0;
  std::uint64_t mult_count = 0;
  std::uint64_t add_count = 0;
  std::uint64_t peak_residency = 0;
  std::vector<std::uint64_t> sent;
  std::vector<std::uint64_t> received;
  std::vector<std::uint64_t> traffic;  // sent + received per processor
  std::optional<BoundValue> bound;
  bool meets_bound = true;  // measured >= bound, compared exactly
  double bound_ratio = 0.0;
  std::string note;
};

SimReport simulate_cache(const CacheSchedule& schedule, std::uint64_t H);

// Sets bound, meets_bound and bound_ratio.
void attach_bound(SimReport& report, const BoundValue& bound);

// C (m x n) = A (m x k) * B (k x n), C blocks of block x block held while
// columns of A and rows of B stream through. Peak residency block^2+2block+2.
CacheSchedule schedule_blocked_mm(long m, long n, long k, long block);
// The same traversal on the packed unfolded product, folding each finished
// block into the packed outputs.
CacheSchedule schedule_blocked_direct(const ContractionSpec& spec, long block);
// Stage-1 products grouped by which width-`block` index ranges their
// omega-tuple entries fall in, then the correction products in chunks that
// fit the same residency.
CacheSchedule schedule_sympres_seq(const ContractionSpec& spec, long block);

// floor(sqrt(H/3)), at least 1.
long block_for_cache(std::uint64_t H);
// Largest block whose symmetry-preserving schedule fits in H; 0 if none.
long sympres_block_for_cache(const ContractionSpec& spec, std::uint64_t H);

// ---- Parallel model -------------------------------------------------------

struct ParEvent {
  enum class Kind { Send, Compute };
  Kind kind = Kind::Send;
  Addr elem = 0;  // the output for Compute
  int from = 0;   // the computing processor for Compute
  int to = 0;
  Addr a = 0;
  Addr b = 0;
  OpKind op = OpKind::Add;

  static ParEvent send(Addr x, int from, int to) { return {Kind::Send, x, from, to, 0, 0, OpKind::Add}; }
  static ParEvent compute(int proc, Addr out, Addr a, Addr b, OpKind op) {
    return {Kind::Compute, out, proc, 0, a, b, op};
  }
  bool operator==(const ParEvent&) const = default;
};

// One tensor's elements and their owning processors.
struct Placement {
  std::string name;
  std::vector<Addr> elements;
  std::vector<int> owners;
};

struct ParSchedule {
  std::string name;
  int p = 1;
  std::vector<ParEvent> events;
  std::vector<Placement> inputs;
  std::vector<Placement> outputs;
};

// M caps per-processor residency; 0 means uncapped.
SimReport simulate_parallel(const ParSchedule& schedule, std::uint64_t M = 0);

enum class Grid { OneD, TwoD, ThreeD };

const char* to_string(Grid g);
Grid parse_grid(const std::string& name);

// Processor grid (pm, pn, pk) over the m, n, k axes of the product cube.
// Each dimension must divide its axis exactly.
ParSchedule schedule_mm_grid(long m, long n, long k, int pm, int pn, int pk);
// 1D splits the longest axis, 2D the two longest, 3D all three, with the
// most balanced factorization of p.
ParSchedule schedule_mm(Grid grid, long m, long n, long k, int p);

// ---- Schedule files -------------------------------------------------------

void write_cache_schedule(std::ostream& os, const CacheSchedule& s);
CacheSchedule read_cache_schedule(std::istream& is);
void write_par_schedule(std::ostream& os, const ParSchedule& s);
ParSchedule read_par_schedule(std::istream& is);

}  // namespace tclb
