#include "tclb/expansion.hpp"
#include "tclb/random.hpp"

namespace tclb {

std::size_t ExecutionDag::edge_count() const {
  std::size_t out = 0;
  for (const auto& s : successors) out += s.size();
  return out;
}

namespace {

class DagBuilder {
 public:
  explicit DagBuilder(ExecutionDag& dag) : dag_(dag) {}

  std::size_t input(Part part) {
    DagVertex v;
    v.part = part;
    v.input = true;
    return add(v);
  }

  std::size_t binary(Part part, std::size_t left, std::size_t right, bool product) {
    DagVertex v;
    v.part = part;
    v.product = product;
    v.left = static_cast<int>(left);
    v.right = static_cast<int>(right);
    const std::size_t id = add(v);
    dag_.successors[left].push_back(id);
    dag_.successors[right].push_back(id);
    return id;
  }

  // Left-to-right chain over operands; a single operand is returned as is.
  std::size_t chain(Part part, const std::vector<std::size_t>& operands) {
    std::size_t acc = operands.front();
    for (std::size_t i = 1; i < operands.size(); ++i) acc = binary(part, acc, operands[i], false);
    return acc;
  }

 private:
  std::size_t add(const DagVertex& v) {
    dag_.vertices.push_back(v);
    dag_.successors.emplace_back();
    return dag_.vertices.size() - 1;
  }

  ExecutionDag& dag_;
};

}  // namespace

ExecutionDag build_dag_naive(const BilinearAlg& alg) {
  ExecutionDag dag;
  DagBuilder builder(dag);
  std::vector<std::size_t> in_a(alg.dim_a()), in_b(alg.dim_b());
  for (auto& v : in_a) v = builder.input(Part::A);
  for (auto& v : in_b) v = builder.input(Part::B);

  std::vector<std::vector<std::size_t>> contributions(alg.dim_c());
  for (std::size_t col = 0; col < alg.rank_cols(); ++col) {
    std::vector<std::size_t> ops_a, ops_b;
    for (const auto& entry : alg.FA.column(col)) ops_a.push_back(in_a[entry.first]);
    for (const auto& entry : alg.FB.column(col)) ops_b.push_back(in_b[entry.first]);
    require(!ops_a.empty() && !ops_b.empty(), "column " + std::to_string(col) + " has an empty operand");
    const std::size_t left = builder.chain(Part::A, ops_a);
    const std::size_t right = builder.chain(Part::B, ops_b);
    const std::size_t product = builder.binary(Part::C, left, right, true);
    dag.products.push_back(product);
    for (const auto& entry : alg.FC.column(col)) contributions[entry.first].push_back(product);
  }
  dag.outputs.assign(alg.dim_c(), -1);
  for (std::size_t row = 0; row < alg.dim_c(); ++row)
    if (!contributions[row].empty())
      dag.outputs[row] = static_cast<int>(builder.chain(Part::C, contributions[row]));
  return dag;
}

Zeta zeta(const ExecutionDag& dag, const std::vector<bool>& Z) {
  require(Z.size() == dag.vertices.size(), "vertex mask size differs from the DAG");
  for (std::size_t v = 0; v < Z.size(); ++v)
    require(!(Z[v] && dag.vertices[v].input), "Z contains input vertex " + std::to_string(v));
  Zeta out;
  for (std::size_t v = 0; v < dag.vertices.size(); ++v) {
    const DagVertex& vx = dag.vertices[v];
    bool feeds_z = false;
    bool feeds_outside_c = false;
    for (std::size_t w : dag.successors[v]) {
      if (Z[w]) feeds_z = true;
      if (!Z[w] && dag.vertices[w].part == Part::C) feeds_outside_c = true;
    }
    if (!Z[v] && feeds_z) {
      if (vx.part == Part::A) ++out.a;
      if (vx.part == Part::B) ++out.b;
    }
    if (Z[v] && (vx.part == Part::C || feeds_outside_c)) ++out.c;
  }
  return out;
}

VerificationReport check_dag_expansion(const ExecutionDag& dag, const ExpansionBound& bound,
                                       std::size_t trials, std::uint64_t seed) {
  VerificationReport report;
  report.subject = "dag";
  report.bound = bound.describe();
  report.mode = VerifyMode::Sampled;
  report.seed = seed;
  Rng rng(seed);
  const std::size_t nv = dag.vertices.size();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<bool> Z(nv, false);
    std::vector<std::size_t> chosen;
    for (std::size_t p : rng.subset_by_size(dag.products.size())) {
      chosen.push_back(p);
      // Closed below on the A and B sides: every non-input ancestor joins.
      std::vector<std::size_t> stack = {dag.products[p]};
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (Z[v] || dag.vertices[v].input) continue;
        Z[v] = true;
        if (dag.vertices[v].left >= 0) stack.push_back(static_cast<std::size_t>(dag.vertices[v].left));
        if (dag.vertices[v].right >= 0) stack.push_back(static_cast<std::size_t>(dag.vertices[v].right));
      }
    }
    // Summation vertices are numbered after their operands.
    for (std::size_t v = 0; v < nv; ++v) {
      const DagVertex& vx = dag.vertices[v];
      if (vx.input || vx.product || vx.part != Part::C) continue;
      const bool reachable = Z[static_cast<std::size_t>(vx.left)] || Z[static_cast<std::size_t>(vx.right)];
      if (reachable && rng.coin()) Z[v] = true;
    }
    const Zeta zt = zeta(dag, Z);
    std::size_t products_in_z = 0;
    for (std::size_t p : dag.products)
      if (Z[p]) ++products_in_z;
    const ExactValue value = bound.evaluate(BigInt(static_cast<unsigned long>(zt.a)),
                                            BigInt(static_cast<unsigned long>(zt.b)),
                                            BigInt(static_cast<unsigned long>(zt.c)));
    if (value.compare(ExactValue(static_cast<long>(products_in_z))) < 0)
      report.violations.push_back({chosen, {zt.a, zt.b, zt.c}, value.str(), products_in_z});
    ++report.subsets_checked;
  }
  return report;
}

}  // namespace tclb
