#include "tclb/sim.hpp"

#include <algorithm>
#include <unordered_set>

namespace tclb {

namespace {

void check_placement(const Placement& pl, int p) {
  if (pl.owners.size() != pl.elements.size())
    throw SimulationError(SimErrorKind::PlacementImbalance, 0,
                          pl.name + ": " + std::to_string(pl.elements.size()) + " elements but " +
                              std::to_string(pl.owners.size()) + " owners");
  std::vector<std::size_t> count(static_cast<std::size_t>(p), 0);
  std::unordered_set<Addr> seen;
  for (std::size_t i = 0; i < pl.elements.size(); ++i) {
    const int q = pl.owners[i];
    if (q < 0 || q >= p)
      throw SimulationError(SimErrorKind::BadProcessor, 0,
                            pl.name + ": owner " + std::to_string(q) + " outside [0, " + std::to_string(p) + ")");
    if (!seen.insert(pl.elements[i]).second)
      throw SimulationError(SimErrorKind::PlacementImbalance, 0,
                            pl.name + ": element " + std::to_string(pl.elements[i]) + " placed twice");
    ++count[static_cast<std::size_t>(q)];
  }
  const std::size_t cap = (pl.elements.size() + static_cast<std::size_t>(p) - 1) / static_cast<std::size_t>(p);
  for (int q = 0; q < p; ++q)
    if (count[static_cast<std::size_t>(q)] > cap)
      throw SimulationError(SimErrorKind::PlacementImbalance, 0,
                            pl.name + ": processor " + std::to_string(q) + " owns " +
                                std::to_string(count[static_cast<std::size_t>(q)]) + " elements, more than " +
                                std::to_string(cap));
}

}  // namespace

SimReport simulate_parallel(const ParSchedule& schedule, std::uint64_t M) {
  const int p = schedule.p;
  require(p >= 1, "processor count must be >= 1");
  const auto P = static_cast<std::size_t>(p);
  for (const auto& pl : schedule.inputs) check_placement(pl, p);
  for (const auto& pl : schedule.outputs) check_placement(pl, p);

  std::vector<std::unordered_set<Addr>> resident(P);
  std::unordered_set<Addr> inputs;
  for (const auto& pl : schedule.inputs)
    for (std::size_t i = 0; i < pl.elements.size(); ++i) {
      resident[static_cast<std::size_t>(pl.owners[i])].insert(pl.elements[i]);
      inputs.insert(pl.elements[i]);
    }
  std::unordered_set<Addr> computed;
  SimReport report;
  report.schedule = schedule.name;
  report.model = "parallel";
  report.sent.assign(P, 0);
  report.received.assign(P, 0);

  auto proc_ok = [&](int q, std::size_t i) {
    if (q < 0 || q >= p)
      throw SimulationError(SimErrorKind::BadProcessor, i, "processor " + std::to_string(q) + " out of range");
    return static_cast<std::size_t>(q);
  };
  auto check_memory = [&](std::size_t q, std::size_t i) {
    if (M > 0 && resident[q].size() > M)
      throw SimulationError(SimErrorKind::MemoryOverflow, i,
                            "processor " + std::to_string(q) + " holds " + std::to_string(resident[q].size()) +
                                " values with M = " + std::to_string(M));
    report.peak_residency = std::max<std::uint64_t>(report.peak_residency, resident[q].size());
  };
  for (std::size_t q = 0; q < P; ++q) check_memory(q, 0);

  for (std::size_t i = 0; i < schedule.events.size(); ++i) {
    const ParEvent& e = schedule.events[i];
    if (e.kind == ParEvent::Kind::Send) {
      const std::size_t from = proc_ok(e.from, i), to = proc_ok(e.to, i);
      if (!resident[from].count(e.elem))
        throw SimulationError(SimErrorKind::NotResident, i,
                              "element " + std::to_string(e.elem) + " is not on processor " + std::to_string(from));
      resident[to].insert(e.elem);
      ++report.sent[from];
      ++report.received[to];
      check_memory(to, i);
    } else {
      const std::size_t q = proc_ok(e.from, i);
      for (Addr x : {e.a, e.b})
        if (!resident[q].count(x))
          throw SimulationError(SimErrorKind::NotResident, i,
                                "operand " + std::to_string(x) + " is not on processor " + std::to_string(q));
      if (inputs.count(e.elem) || !computed.insert(e.elem).second)
        throw SimulationError(SimErrorKind::Recomputation, i,
                              "element " + std::to_string(e.elem) + " was already computed");
      resident[q].insert(e.elem);
      ++(e.op == OpKind::Mul ? report.mult_count : report.add_count);
      check_memory(q, i);
    }
  }
  for (const auto& pl : schedule.outputs)
    for (std::size_t i = 0; i < pl.elements.size(); ++i)
      if (!resident[static_cast<std::size_t>(pl.owners[i])].count(pl.elements[i]))
        throw SimulationError(SimErrorKind::MisplacedOutput, schedule.events.size(),
                              pl.name + " element " + std::to_string(pl.elements[i]) + " is not on its owner " +
                                  std::to_string(pl.owners[i]));
  report.traffic.resize(P);
  for (std::size_t q = 0; q < P; ++q) {
    report.traffic[q] = report.sent[q] + report.received[q];
    report.measured_cost = std::max(report.measured_cost, report.traffic[q]);
  }
  return report;
}

}  // namespace tclb
