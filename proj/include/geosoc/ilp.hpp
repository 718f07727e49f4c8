#pragma once

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "geosoc/core.hpp"

namespace geosoc {

enum class VarType { Binary, Continuous };
enum class Sense { Le, Eq, Ge };

struct LinearTerm {
  int var;
  double coef;
};

struct IlpVariable {
  std::string name;
  VarType type;
};

struct IlpConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense;
  double rhs;
};

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> violated;
};

// Linear model with nonnegative variables: binaries in {0,1}, continuous in [0, inf).
class IlpModel {
 public:
  int add_variable(std::string name, VarType type) {
    if (index_.count(name)) throw std::invalid_argument("duplicate variable " + name);
    index_[name] = static_cast<int>(vars_.size());
    vars_.push_back({std::move(name), type});
    return static_cast<int>(vars_.size()) - 1;
  }
  void add_objective_term(int var, double coef) { objective_.push_back({var, coef}); }
  void add_constraint(std::string name, std::vector<LinearTerm> terms, Sense sense, double rhs) {
    rows_.push_back({std::move(name), std::move(terms), sense, rhs});
  }

  int var(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unknown variable " + name);
    return it->second;
  }
  const std::vector<IlpVariable>& variables() const { return vars_; }
  const std::vector<IlpConstraint>& constraints() const { return rows_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }

  std::size_t count_constraints(char family) const {
    std::size_t c = 0;
    for (const auto& r : rows_)
      if (!r.name.empty() && r.name[0] == family) ++c;
    return c;
  }

  std::vector<double> values_of(const std::map<std::string, double>& values) const {
    std::vector<double> x(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = values.find(vars_[i].name);
      if (it == values.end()) throw std::domain_error("missing value for variable " + vars_[i].name);
      x[i] = it->second;
    }
    return x;
  }

  double evaluate_objective(const std::map<std::string, double>& values) const {
    return evaluate(objective_, values_of(values));
  }

  ValidationResult validate_assignment(const std::map<std::string, double>& values, double tol = 1e-6) const {
    const auto x = values_of(values);
    ValidationResult res;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const double v = x[i];
      bool ok = v >= -tol;
      if (vars_[i].type == VarType::Binary) ok = ok && (std::abs(v) <= tol || std::abs(v - 1.0) <= tol);
      if (!ok) res.violated.push_back("domain:" + vars_[i].name);
    }
    for (const auto& r : rows_) {
      const double lhs = evaluate(r.terms, x);
      bool ok = true;
      switch (r.sense) {
        case Sense::Le: ok = lhs <= r.rhs + tol; break;
        case Sense::Ge: ok = lhs >= r.rhs - tol; break;
        case Sense::Eq: ok = std::abs(lhs - r.rhs) <= tol; break;
      }
      if (!ok) res.violated.push_back(r.name);
    }
    res.ok = res.violated.empty();
    return res;
  }

  std::string to_lp() const {
    std::ostringstream os;
    os << "\\ geo-social group query model\n";
    os << "Minimize\n obj:";
    write_expr(os, objective_);
    os << "\nSubject To\n";
    for (const auto& r : rows_) {
      os << " " << r.name << ":";
      write_expr(os, r.terms);
      os << (r.sense == Sense::Le ? " <= " : r.sense == Sense::Ge ? " >= " : " = ") << num(r.rhs) << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : vars_)
      if (v.type == VarType::Continuous) os << " " << v.name << " >= 0\n";
    os << "Binary\n";
    for (const auto& v : vars_)
      if (v.type == VarType::Binary) os << " " << v.name << "\n";
    os << "End\n";
    return os.str();
  }

 private:
  static double evaluate(const std::vector<LinearTerm>& terms, const std::vector<double>& x) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coef * x[t.var];
    return s;
  }
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  void write_expr(std::ostringstream& os, const std::vector<LinearTerm>& terms) const {
    if (terms.empty()) {
      os << " 0";
      return;
    }
    int on_line = 0;
    for (const auto& t : terms) {
      if (on_line == 8) {
        os << "\n   ";
        on_line = 0;
      }
      os << (t.coef < 0 ? " - " : " + ") << num(std::abs(t.coef)) << " " << vars_[t.var].name;
      ++on_line;
    }
  }

  std::vector<IlpVariable> vars_;
  std::map<std::string, int> index_;
  std::vector<LinearTerm> objective_;
  std::vector<IlpConstraint> rows_;
};

namespace detail {

inline std::string lp_label(long long id) { return id < 0 ? "n" + std::to_string(-id) : std::to_string(id); }

inline std::vector<int> add_familiarity_rows(IlpModel& m, const Query& q, const SocialGraph& g,
                                             const SpatialDataset& d, const std::vector<int>& phi, char row,
                                             char budget_row) {
  const int n = static_cast<int>(d.member_count());
  std::vector<int> mu(n);
  for (int u = 0; u < n; ++u) mu[u] = m.add_variable("mu_u" + lp_label(d.member_label(u)), VarType::Continuous);
  for (int u = 0; u < n; ++u) {
    std::vector<LinearTerm> t{{phi[u], static_cast<double>(q.p - 1)}};
    for (int v : g.neighbors(u)) t.push_back({phi[v], -1.0});
    t.push_back({mu[u], -1.0});
    m.add_constraint(std::string(1, row) + "_u" + lp_label(d.member_label(u)), std::move(t), Sense::Le, 0.0);
  }
  std::vector<LinearTerm> t;
  for (int u = 0; u < n; ++u) t.push_back({mu[u], 1.0});
  m.add_constraint(std::string(1, budget_row), std::move(t), Sense::Le, static_cast<double>(q.k) * q.p);
  return mu;
}

}  // namespace detail

inline IlpModel export_mrgq_model(const Query& q, const SocialGraph& g, const SpatialDataset& d) {
  IlpModel m;
  const int n = static_cast<int>(d.member_count());
  auto venues = q.venues;
  std::sort(venues.begin(), venues.end());
  std::vector<int> phi(n), pi(venues.size()), delta(n);
  for (int u = 0; u < n; ++u) phi[u] = m.add_variable("phi_u" + detail::lp_label(d.member_label(u)), VarType::Binary);
  for (std::size_t j = 0; j < venues.size(); ++j)
    pi[j] = m.add_variable("pi_q" + detail::lp_label(d.venue_label(venues[j])), VarType::Binary);

  std::vector<LinearTerm> a;
  for (int u = 0; u < n; ++u) a.push_back({phi[u], 1.0});
  m.add_constraint("A", std::move(a), Sense::Eq, q.p);
  std::vector<LinearTerm> b;
  for (int x : pi) b.push_back({x, 1.0});
  m.add_constraint("B", std::move(b), Sense::Eq, 1.0);

  // C and D; mu is declared before delta so the variable order reads phi, pi, mu, delta.
  detail::add_familiarity_rows(m, q, g, d, phi, 'C', 'D');
  for (int u = 0; u < n; ++u)
    delta[u] = m.add_variable("delta_u" + detail::lp_label(d.member_label(u)), VarType::Continuous);
  for (int u = 0; u < n; ++u) m.add_objective_term(delta[u], 1.0);

  for (int u = 0; u < n; ++u)
    for (std::size_t j = 0; j < venues.size(); ++j) {
      const double duq = d.dist(u, venues[j]);
      m.add_constraint("E_u" + detail::lp_label(d.member_label(u)) + "_q" +
                           detail::lp_label(d.venue_label(venues[j])),
                       {{phi[u], duq}, {pi[j], duq}, {delta[u], -1.0}}, Sense::Le, duq);
    }
  for (int u = 0; u < n; ++u)
    m.add_constraint("F_u" + detail::lp_label(d.member_label(u)), {{delta[u], 1.0}}, Sense::Le, q.t);
  return m;
}

inline IlpModel export_ssgq_model(const Query& q, const SocialGraph& g, const SpatialDataset& d) {
  if (q.venues.size() != 1) throw std::invalid_argument("single-venue model needs exactly one venue");
  IlpModel m;
  const int n = static_cast<int>(d.member_count());
  const int venue = q.venues.front();
  std::vector<int> phi(n);
  for (int u = 0; u < n; ++u) phi[u] = m.add_variable("phi_u" + detail::lp_label(d.member_label(u)), VarType::Binary);
  for (int u = 0; u < n; ++u) m.add_objective_term(phi[u], d.dist(u, venue));

  std::vector<LinearTerm> gsum;
  for (int u = 0; u < n; ++u) gsum.push_back({phi[u], 1.0});
  m.add_constraint("G", std::move(gsum), Sense::Eq, q.p);
  for (int u = 0; u < n; ++u)
    m.add_constraint("H_u" + detail::lp_label(d.member_label(u)), {{phi[u], d.dist(u, venue)}}, Sense::Le, q.t);
  detail::add_familiarity_rows(m, q, g, d, phi, 'I', 'J');
  return m;
}

}  // namespace geosoc
