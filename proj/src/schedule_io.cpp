#include "tclb/sim.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace tclb {

namespace {

const char* op_name(OpKind op) { return op == OpKind::Mul ? "MUL" : "ADD"; }

OpKind parse_op(const std::string& s, std::size_t line) {
  if (s == "MUL") return OpKind::Mul;
  if (s == "ADD") return OpKind::Add;
  throw PreconditionError("line " + std::to_string(line) + ": unknown op '" + s + "'");
}

void expect_arrow(std::istringstream& is, std::size_t line) {
  std::string arrow;
  is >> arrow;
  if (arrow != "<-") throw PreconditionError("line " + std::to_string(line) + ": expected '<-'");
}

void check(std::istringstream& is, std::size_t line) {
  if (is.fail()) throw PreconditionError("line " + std::to_string(line) + ": malformed record");
  std::string rest;
  if (is >> rest) throw PreconditionError("line " + std::to_string(line) + ": trailing '" + rest + "'");
}

Placement& placement_named(std::vector<Placement>& list, const std::string& name) {
  for (auto& p : list)
    if (p.name == name) return p;
  list.push_back({name, {}, {}});
  return list.back();
}

}  // namespace

void write_cache_schedule(std::ostream& os, const CacheSchedule& s) {
  os << "NAME " << s.name << "\n";
  if (s.reuses_partial_sums) os << "REUSE\n";
  for (Addr x : s.inputs) os << "IN " << x << "\n";
  for (Addr x : s.outputs) os << "OUT " << x << "\n";
  for (const auto& e : s.events) {
    switch (e.kind) {
      case CacheEvent::Kind::Load: os << "L " << e.addr << "\n"; break;
      case CacheEvent::Kind::Store: os << "S " << e.addr << "\n"; break;
      case CacheEvent::Kind::Evict: os << "E " << e.addr << "\n"; break;
      case CacheEvent::Kind::Compute:
        os << "C " << e.addr << " <- " << e.a << " " << e.b << " " << op_name(e.op) << "\n";
        break;
    }
  }
}

CacheSchedule read_cache_schedule(std::istream& in) {
  CacheSchedule s;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    std::istringstream is(text);
    std::string tag;
    is >> tag;
    if (tag == "NAME") {
      s.name = text.size() > 5 ? text.substr(5) : "";
      continue;
    }
    if (tag == "REUSE") {
      s.reuses_partial_sums = true;
      check(is, line);
      continue;
    }
    Addr x = 0;
    if (tag == "IN" || tag == "OUT" || tag == "L" || tag == "S" || tag == "E") {
      is >> x;
      check(is, line);
      if (tag == "IN") s.inputs.push_back(x);
      else if (tag == "OUT") s.outputs.push_back(x);
      else if (tag == "L") s.events.push_back(CacheEvent::load(x));
      else if (tag == "S") s.events.push_back(CacheEvent::store(x));
      else s.events.push_back(CacheEvent::evict(x));
    } else if (tag == "C") {
      Addr a = 0, b = 0;
      std::string op;
      is >> x;
      expect_arrow(is, line);
      is >> a >> b >> op;
      const OpKind kind = parse_op(op, line);
      check(is, line);
      s.events.push_back(CacheEvent::compute(x, a, b, kind));
    } else {
      throw PreconditionError("line " + std::to_string(line) + ": unknown record '" + tag + "'");
    }
  }
  return s;
}

void write_par_schedule(std::ostream& os, const ParSchedule& s) {
  os << "NAME " << s.name << "\n";
  os << "P " << s.p << "\n";
  for (const auto& pl : s.inputs)
    for (std::size_t i = 0; i < pl.elements.size(); ++i)
      os << "IN " << pl.name << " " << pl.elements[i] << " " << pl.owners[i] << "\n";
  for (const auto& pl : s.outputs)
    for (std::size_t i = 0; i < pl.elements.size(); ++i)
      os << "OUT " << pl.name << " " << pl.elements[i] << " " << pl.owners[i] << "\n";
  for (const auto& e : s.events) {
    if (e.kind == ParEvent::Kind::Send)
      os << "SND " << e.elem << " " << e.from << " " << e.to << "\n";
    else
      os << "CMP " << e.from << " " << e.elem << " <- " << e.a << " " << e.b << " " << op_name(e.op) << "\n";
  }
}

ParSchedule read_par_schedule(std::istream& in) {
  ParSchedule s;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    std::istringstream is(text);
    std::string tag;
    is >> tag;
    if (tag == "NAME") {
      s.name = text.size() > 5 ? text.substr(5) : "";
    } else if (tag == "P") {
      is >> s.p;
      check(is, line);
    } else if (tag == "IN" || tag == "OUT") {
      std::string name;
      Addr x = 0;
      int owner = 0;
      is >> name >> x >> owner;
      check(is, line);
      Placement& pl = placement_named(tag == "IN" ? s.inputs : s.outputs, name);
      pl.elements.push_back(x);
      pl.owners.push_back(owner);
    } else if (tag == "SND") {
      Addr x = 0;
      int from = 0, to = 0;
      is >> x >> from >> to;
      check(is, line);
      s.events.push_back(ParEvent::send(x, from, to));
    } else if (tag == "CMP") {
      int q = 0;
      Addr out = 0, a = 0, b = 0;
      std::string op;
      is >> q >> out;
      expect_arrow(is, line);
      is >> a >> b >> op;
      const OpKind kind = parse_op(op, line);
      check(is, line);
      s.events.push_back(ParEvent::compute(q, out, a, b, kind));
    } else {
      throw PreconditionError("line " + std::to_string(line) + ": unknown record '" + tag + "'");
    }
  }
  return s;
}

}  // namespace tclb
