#include "tclb/sim.hpp"

#include <unordered_set>

namespace tclb {

const char* to_string(SimErrorKind k) {
  switch (k) {
    case SimErrorKind::CapacityOverflow: return "capacity-overflow";
    case SimErrorKind::OperandNotCached: return "operand-not-cached";
    case SimErrorKind::Recomputation: return "recomputation";
    case SimErrorKind::UnknownAddress: return "unknown-address";
    case SimErrorKind::NotCached: return "not-cached";
    case SimErrorKind::AlreadyCached: return "already-cached";
    case SimErrorKind::MissingOutput: return "missing-output";
    case SimErrorKind::NotResident: return "operand-not-resident";
    case SimErrorKind::BadProcessor: return "bad-processor";
    case SimErrorKind::PlacementImbalance: return "placement-imbalance";
    case SimErrorKind::MisplacedOutput: return "misplaced-output";
    case SimErrorKind::MemoryOverflow: return "memory-overflow";
  }
  return "?";
}

SimulationError::SimulationError(SimErrorKind kind, std::size_t event_index, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " at event " + std::to_string(event_index) +
                         ": " + what),
      kind_(kind),
      index_(event_index) {}

SimReport simulate_cache(const CacheSchedule& schedule, std::uint64_t H) {
  require(H >= 1, "cache size must be >= 1");
  std::unordered_set<Addr> slow(schedule.inputs.begin(), schedule.inputs.end());
  const std::unordered_set<Addr> inputs = slow;
  std::unordered_set<Addr> cached;
  std::unordered_set<Addr> computed;
  SimReport report;
  report.schedule = schedule.name;
  report.model = "cache";

  auto fail = [](SimErrorKind kind, std::size_t i, const std::string& what) {
    throw SimulationError(kind, i, what);
  };
  auto name = [](Addr x) { return "address " + std::to_string(x); };

  for (std::size_t i = 0; i < schedule.events.size(); ++i) {
    const CacheEvent& e = schedule.events[i];
    switch (e.kind) {
      case CacheEvent::Kind::Load:
        if (cached.count(e.addr)) fail(SimErrorKind::AlreadyCached, i, name(e.addr) + " is already cached");
        if (!slow.count(e.addr))
          fail(SimErrorKind::UnknownAddress, i, name(e.addr) + " is not in slow memory");
        cached.insert(e.addr);
        ++report.loads;
        break;
      case CacheEvent::Kind::Store:
        if (!cached.count(e.addr)) fail(SimErrorKind::NotCached, i, name(e.addr) + " is not cached");
        slow.insert(e.addr);
        ++report.stores;
        break;
      case CacheEvent::Kind::Evict:
        if (!cached.erase(e.addr)) fail(SimErrorKind::NotCached, i, name(e.addr) + " is not cached");
        break;
      case CacheEvent::Kind::Compute:
        if (!cached.count(e.a)) fail(SimErrorKind::OperandNotCached, i, "operand " + name(e.a) + " is not cached");
        if (!cached.count(e.b)) fail(SimErrorKind::OperandNotCached, i, "operand " + name(e.b) + " is not cached");
        if (inputs.count(e.addr) || !computed.insert(e.addr).second)
          fail(SimErrorKind::Recomputation, i, name(e.addr) + " was already computed");
        cached.insert(e.addr);
        ++(e.op == OpKind::Mul ? report.mult_count : report.add_count);
        break;
    }
    if (cached.size() > H)
      fail(SimErrorKind::CapacityOverflow, i,
           std::to_string(cached.size()) + " values resident with H = " + std::to_string(H));
    report.peak_residency = std::max<std::uint64_t>(report.peak_residency, cached.size());
  }
  for (Addr out : schedule.outputs)
    if (!computed.count(out) || !slow.count(out))
      fail(SimErrorKind::MissingOutput, schedule.events.size(), "output " + name(out) + " was never stored");
  report.measured_cost = report.loads + report.stores;
  if (schedule.reuses_partial_sums) report.note = "schedule reuses partial sums";
  return report;
}

void attach_bound(SimReport& report, const BoundValue& bound) {
  report.bound = bound;
  const PowerValue measured(Scalar(BigInt(static_cast<unsigned long>(report.measured_cost))));
  report.meets_bound = measured.compare(bound.value) >= 0;
  const double b = bound.value.approx();
  report.bound_ratio = b > 0 ? static_cast<double>(report.measured_cost) / b : 0.0;
}

}  // namespace tclb
