#include "tclb/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace tclb {

SymExpr SymExpr::leaf(Scalar n_exp, Scalar x_exp, Scalar coef) {
  SymExpr out;
  out.kind = Kind::Term;
  out.term = {coef, n_exp, x_exp};
  return out;
}

SymExpr SymExpr::max_of(std::vector<SymExpr> children) {
  require(!children.empty(), "max of no terms");
  SymExpr out;
  out.kind = Kind::Max;
  out.children = std::move(children);
  return out;
}

SymExpr SymExpr::min_of(std::vector<SymExpr> children) {
  require(!children.empty(), "min of no terms");
  SymExpr out;
  out.kind = Kind::Min;
  out.children = std::move(children);
  return out;
}

Scalar SymExpr::exponent_at(const Scalar& theta) const {
  if (kind == Kind::Term) return term.n_exp + term.x_exp * theta;
  Scalar best = children.front().exponent_at(theta);
  for (std::size_t i = 1; i < children.size(); ++i) {
    const Scalar e = children[i].exponent_at(theta);
    if (kind == Kind::Max ? e > best : e < best) best = e;
  }
  return best;
}

namespace {

void collect_leaves(const SymExpr& e, std::vector<Monomial>& out) {
  if (e.kind == SymExpr::Kind::Term) {
    out.push_back(e.term);
    return;
  }
  for (const auto& c : e.children) collect_leaves(c, out);
}

}  // namespace

std::optional<Monomial> simplify(const SymExpr& expr, const Scalar& theta_max) {
  std::vector<Monomial> leaves;
  collect_leaves(expr, leaves);
  // Both sides are piecewise linear in theta with breaks only where two
  // leaves cross, so agreeing on these points means agreeing everywhere.
  std::vector<Scalar> points = {0, theta_max};
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      const Scalar slope = leaves[i].x_exp - leaves[j].x_exp;
      if (slope == 0) continue;
      const Scalar theta = (leaves[j].n_exp - leaves[i].n_exp) / slope;
      if (theta > 0 && theta < theta_max) points.push_back(theta);
    }
  for (const auto& leaf : leaves) {
    bool matches = true;
    for (const auto& theta : points)
      if (leaf.n_exp + leaf.x_exp * theta != expr.exponent_at(theta)) {
        matches = false;
        break;
      }
    if (matches) return leaf;
  }
  return std::nullopt;
}

std::vector<ContractionSpec> table_specs() {
  return {{2, 1, 1, 0}, {2, 2, 1, 0}, {2, 3, 1, 0}, {2, 2, 2, 0},
          {2, 1, 1, 1}, {2, 2, 1, 1}, {2, 2, 2, 1}, {2, 2, 2, 2}};
}

namespace {

Monomial simplified(const BoundValue& b, const Scalar& theta_max, const char* what,
                    const ContractionSpec& spec) {
  require(b.symbolic.has_value(), std::string(what) + " has no symbolic form");
  auto m = simplify(*b.symbolic, theta_max);
  if (!m)
    throw std::runtime_error(std::string(what) + " has no single dominant term for " + describe(spec));
  m->coef = 1;
  return *m;
}

}  // namespace

std::vector<AsymptoticRecord> asymptotic_table(const std::vector<ContractionSpec>& specs) {
  std::vector<AsymptoticRecord> out;
  for (ContractionSpec spec : specs) {
    validate(spec);
    // Shapes do not depend on n, H or p.
    spec.n = 2;
    AsymptoticRecord r;
    r.s = spec.s;
    r.t = spec.t;
    r.v = spec.v;
    const Scalar omega = spec.omega();
    const BigInt stv = factorial(static_cast<unsigned>(spec.s)) *
                       factorial(static_cast<unsigned>(spec.t)) *
                       factorial(static_cast<unsigned>(spec.v));
    r.f_nonsym = {1, omega, 0};
    r.f_direct = {Scalar(BigInt(1), stv), omega, 0};
    r.f_sympres = {Scalar(BigInt(1), factorial(static_cast<unsigned>(spec.omega()))), omega, 0};
    r.f_direct.coef.canonicalize();
    r.f_sympres.coef.canonicalize();
    if (classify(spec) == SpecClass::Degenerate) r.f_sympres = r.f_direct;

    const Scalar h_max = 2;  // H <= n^2
    const Scalar p_max = 1;  // p <= n
    r.q_nonsym_direct = simplified(q_direct(spec, 1), h_max, "Q direct", spec);
    r.q_sympres = simplified(q_sympres(spec, 1), h_max, "Q sympres", spec);
    r.w_nonsym = simplified(w_nonsym(spec, 1), p_max, "W nonsym", spec);
    r.w_direct = simplified(w_direct(spec, 1), p_max, "W direct", spec);
    if (classify(spec) != SpecClass::Degenerate)
      r.w_sympres = simplified(w_sympres(spec, 1), p_max, "W sympres", spec);
    else
      r.w_sympres = r.w_direct;
    out.push_back(r);
  }
  return out;
}

std::string render(const Monomial& m, const std::string& x) {
  auto power = [](const std::string& base, const Scalar& e) {
    return e == 1 ? base : base + "^{" + to_string(e) + "}";
  };
  std::ostringstream os;
  const BigInt num = m.coef.get_num();
  const BigInt den = m.coef.get_den();
  bool any = false;
  if (num != 1) {
    os << num.get_str();
    any = true;
  }
  if (m.n_exp != 0) {
    if (any) os << "*";
    os << power("n", m.n_exp);
    any = true;
  }
  if (m.x_exp > 0) {
    if (any) os << "*";
    os << power(x, m.x_exp);
    any = true;
  }
  if (!any) os << "1";
  std::string denominator;
  if (den != 1) denominator = den.get_str();
  if (m.x_exp < 0) {
    const std::string xs = power(x, -m.x_exp);
    denominator = denominator.empty() ? xs : denominator + "*" + xs;
  }
  if (!denominator.empty()) os << "/" << denominator;
  return os.str();
}

std::string table_csv(const std::vector<AsymptoticRecord>& rows) {
  std::ostringstream os;
  os << "s,t,v,F_nonsym,F_direct,F_sympres,Q_nonsym_direct,Q_sympres,W_nonsym,W_direct,W_sympres\n";
  for (const auto& r : rows) {
    os << r.s << "," << r.t << "," << r.v << "," << render(r.f_nonsym, "n") << ","
       << render(r.f_direct, "n") << "," << render(r.f_sympres, "n") << ","
       << render(r.q_nonsym_direct, "H") << "," << render(r.q_sympres, "H") << ","
       << render(r.w_nonsym, "p") << "," << render(r.w_direct, "p") << ","
       << render(r.w_sympres, "p") << "\n";
  }
  return os.str();
}

}  // namespace tclb
