#include "vga/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace vga::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::unbounded:
      return "unbounded";
    case Status::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

std::size_t Problem::add_variable(std::string label, double cost, Domain domain) {
  objective.push_back(cost);
  domains.push_back(domain);
  variable_labels.push_back(std::move(label));
  if (!secondary_objective.empty()) secondary_objective.push_back(0.0);
  for (auto& c : constraints) c.coefficients.push_back(0.0);
  return objective.size() - 1;
}

std::size_t Problem::add_constraint(std::string label,
                                    const std::vector<std::pair<std::size_t, double>>& terms,
                                    Relation relation, double rhs) {
  Constraint c;
  c.label = std::move(label);
  c.coefficients.assign(objective.size(), 0.0);
  for (const auto& [index, value] : terms) c.coefficients.at(index) += value;
  c.relation = relation;
  c.rhs = rhs;
  constraints.push_back(std::move(c));
  return constraints.size() - 1;
}

std::optional<std::size_t> Problem::find_variable(const std::string& label) const {
  auto it = std::find(variable_labels.begin(), variable_labels.end(), label);
  if (it == variable_labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variable_labels.begin());
}

std::optional<std::size_t> Problem::find_constraint(const std::string& label) const {
  for (std::size_t i = 0; i < constraints.size(); ++i)
    if (constraints[i].label == label) return i;
  return std::nullopt;
}

std::optional<std::string> Problem::defect() const {
  const std::size_t n = objective.size();
  if (domains.size() != n || variable_labels.size() != n)
    return "variable metadata does not match objective length";
  if (!secondary_objective.empty() && secondary_objective.size() != n)
    return "secondary objective length does not match variable count";
  std::set<std::string> labels;
  for (const auto& l : variable_labels)
    if (!labels.insert(l).second) return "duplicate label '" + l + "'";
  for (const auto& c : constraints) {
    if (!labels.insert(c.label).second) return "duplicate label '" + c.label + "'";
    if (c.coefficients.size() != n) return "constraint '" + c.label + "' is not rectangular";
    if (!std::isfinite(c.rhs)) return "constraint '" + c.label + "' has non-finite rhs";
    for (double a : c.coefficients)
      if (!std::isfinite(a)) return "constraint '" + c.label + "' has non-finite coefficient";
  }
  for (double c : objective)
    if (!std::isfinite(c)) return "non-finite objective coefficient";
  for (double c : secondary_objective)
    if (!std::isfinite(c)) return "non-finite secondary objective coefficient";
  return std::nullopt;
}

bool ResidualReport::within(double tol) const {
  return primal <= tol && dual <= tol && complementarity <= tol && relative_duality_gap <= tol;
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Equality-form internal problem: min cost^T z, A z = b, z >= 0, b >= 0.
struct StandardForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // rows x cols
  std::vector<double> b;
  std::vector<double> cost;
  std::vector<double> cost2;
  std::vector<char> artificial;
  std::vector<std::size_t> unit_col;
  std::vector<double> row_factor;  // internal row = factor * original row
  std::vector<std::size_t> plus_col;
  std::vector<std::size_t> minus_col;

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

StandardForm standardize(const Problem& p) {
  StandardForm sf;
  const std::size_t n = p.variable_count();
  const std::size_t m = p.constraint_count();
  const double obj_sign = p.sense == Sense::maximize ? -1.0 : 1.0;
  const double sec_sign = p.secondary_sense == Sense::maximize ? -1.0 : 1.0;

  sf.plus_col.assign(n, npos);
  sf.minus_col.assign(n, npos);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    sf.plus_col[j] = col++;
    if (p.domains[j] == Domain::free) sf.minus_col[j] = col++;
  }
  const std::size_t structural = col;

  // Normalized relation after scaling rows to unit max-coefficient and
  // flipping so that rhs >= 0.
  std::vector<Relation> rel(m);
  sf.row_factor.assign(m, 1.0);
  std::size_t extra = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    double scale = 0.0;
    for (double v : c.coefficients) scale = std::max(scale, std::fabs(v));
    double f = scale > 0.0 ? 1.0 / scale : 1.0;
    Relation r = c.relation;
    if (c.rhs * f < 0.0) {
      f = -f;
      if (r == Relation::less_equal)
        r = Relation::greater_equal;
      else if (r == Relation::greater_equal)
        r = Relation::less_equal;
    }
    sf.row_factor[i] = f;
    rel[i] = r;
    extra += (r == Relation::greater_equal) ? 2 : 1;
  }

  sf.rows = m;
  sf.cols = structural + extra;
  sf.a.assign(sf.rows * sf.cols, 0.0);
  sf.b.assign(m, 0.0);
  sf.cost.assign(sf.cols, 0.0);
  sf.cost2.assign(sf.cols, 0.0);
  sf.artificial.assign(sf.cols, 0);
  sf.unit_col.assign(m, npos);

  for (std::size_t j = 0; j < n; ++j) {
    sf.cost[sf.plus_col[j]] = obj_sign * p.objective[j];
    if (sf.minus_col[j] != npos) sf.cost[sf.minus_col[j]] = -obj_sign * p.objective[j];
    if (!p.secondary_objective.empty()) {
      sf.cost2[sf.plus_col[j]] = sec_sign * p.secondary_objective[j];
      if (sf.minus_col[j] != npos)
        sf.cost2[sf.minus_col[j]] = -sec_sign * p.secondary_objective[j];
    }
  }

  col = structural;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    const double f = sf.row_factor[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double v = f * c.coefficients[j];
      sf.at(i, sf.plus_col[j]) = v;
      if (sf.minus_col[j] != npos) sf.at(i, sf.minus_col[j]) = -v;
    }
    sf.b[i] = f * c.rhs;
    if (sf.b[i] == 0.0) sf.b[i] = 0.0;  // drop negative zero
    switch (rel[i]) {
      case Relation::less_equal:
        sf.at(i, col) = 1.0;
        sf.unit_col[i] = col++;
        break;
      case Relation::greater_equal:
        sf.at(i, col++) = -1.0;
        sf.at(i, col) = 1.0;
        sf.artificial[col] = 1;
        sf.unit_col[i] = col++;
        break;
      case Relation::equal:
        sf.at(i, col) = 1.0;
        sf.artificial[col] = 1;
        sf.unit_col[i] = col++;
        break;
    }
  }
  return sf;
}

class Tableau {
 public:
  explicit Tableau(const StandardForm& sf)
      : rows_(sf.rows), cols_(sf.cols), t_(rows_ * (cols_ + 1)), basis_(sf.unit_col) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) = sf.at(i, j);
      at(i, cols_) = sf.b[i];
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  double rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t basic(std::size_t r) const { return basis_[r]; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  void reduced_costs(const std::vector<double>& cost, std::vector<double>& d) const {
    d.assign(cols_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
      double s = cost[j];
      for (std::size_t i = 0; i < rows_; ++i) s -= cost[basis_[i]] * at(i, j);
      d[j] = s;
    }
    for (std::size_t i = 0; i < rows_; ++i) d[basis_[i]] = 0.0;
  }

  double objective(const std::vector<double>& cost) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += cost[basis_[i]] * rhs(i);
    return s;
  }

  void clamp_rhs(double tol) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (at(i, cols_) < 0.0 && at(i, cols_) > -tol) at(i, cols_) = 0.0;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

enum class PhaseOutcome { optimal, unbounded, iteration_limit, breakdown };

struct PhaseStats {
  std::size_t iterations = 0;
  bool used_bland = false;
};

PhaseOutcome run_phase(Tableau& t, const std::vector<double>& cost,
                       const std::vector<char>& allowed, const Options& opt,
                       PhaseStats& stats) {
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  double cmax = 1.0;
  for (std::size_t j = 0; j < n; ++j)
    if (allowed[j]) cmax = std::max(cmax, std::fabs(cost[j]));
  const double dtol = opt.optimality_tolerance * cmax;
  const std::size_t stall_limit = 3 * (m + n);
  const std::size_t iteration_limit = 50 * (m + n) + 1000;

  std::vector<double> d;
  std::vector<char> in_basis(n, 0);
  bool bland = false;
  std::size_t stall = 0;
  double best = t.objective(cost);

  for (std::size_t iter = 0;; ++iter) {
    if (iter >= iteration_limit) return PhaseOutcome::iteration_limit;
    t.reduced_costs(cost, d);
    std::fill(in_basis.begin(), in_basis.end(), 0);
    for (std::size_t i = 0; i < m; ++i) in_basis[t.basic(i)] = 1;

    std::size_t enter = npos;
    for (std::size_t j = 0; j < n; ++j) {
      if (!allowed[j] || in_basis[j] || d[j] >= -dtol) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (enter == npos || d[j] < d[enter]) enter = j;
    }
    if (enter == npos) return PhaseOutcome::optimal;

    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a > opt.pivot_tolerance) min_ratio = std::min(min_ratio, std::max(t.rhs(i), 0.0) / a);
    }
    if (!std::isfinite(min_ratio)) return PhaseOutcome::unbounded;

    const double window = opt.ratio_tie_tolerance * std::max(1.0, min_ratio);
    std::size_t leave = npos;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(t.rhs(i), 0.0) / a;
      if (ratio > min_ratio + window) continue;
      if (leave == npos) {
        leave = i;
      } else if (bland && t.basic(i) < t.basic(leave)) {
        leave = i;
      }
    }
    if (leave == npos) return PhaseOutcome::breakdown;

    t.pivot(leave, enter);
    t.clamp_rhs(opt.feasibility_tolerance);
    ++stats.iterations;

    const double obj = t.objective(cost);
    if (obj < best - 1e-12 * std::max(1.0, std::fabs(best))) {
      best = obj;
      stall = 0;
    } else if (++stall > stall_limit && !bland) {
      bland = true;
      stats.used_bland = true;
    }
  }
}

// Solves M z = r (or M^T z = r) by Gaussian elimination with partial
// pivoting.  M is k x k row-major.  Returns false when singular.
bool solve_dense(std::vector<double> M, std::vector<double>& r, std::size_t k, bool transpose) {
  if (transpose) {
    std::vector<double> tr(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) tr[j * k + i] = M[i * k + j];
    M.swap(tr);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < k; ++i)
      if (std::fabs(M[i * k + c]) > std::fabs(M[p * k + c])) p = i;
    if (std::fabs(M[p * k + c]) < 1e-13) return false;
    if (p != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(M[p * k + j], M[c * k + j]);
      std::swap(r[p], r[c]);
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      const double f = M[i * k + c] / M[c * k + c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < k; ++j) M[i * k + j] -= f * M[c * k + j];
      r[i] -= f * r[c];
    }
  }
  for (std::size_t c = k; c-- > 0;) {
    double s = r[c];
    for (std::size_t j = c + 1; j < k; ++j) s -= M[c * k + j] * r[j];
    r[c] = s / M[c * k + c];
  }
  return true;
}

Solution failure(Status status, std::string message, std::size_t iterations) {
  Solution s;
  s.status = status;
  s.message = std::move(message);
  s.iterations = iterations;
  return s;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  if (auto d = problem.defect())
    return failure(Status::numerical_failure, "malformed problem: " + *d, 0);

  const StandardForm sf = standardize(problem);
  Tableau t(sf);
  PhaseStats stats;

  std::vector<char> allowed(sf.cols, 1);
  for (std::size_t j = 0; j < sf.cols; ++j)
    if (sf.artificial[j]) allowed[j] = 0;

  // Phase 1.
  bool any_artificial = false;
  std::vector<double> phase1(sf.cols, 0.0);
  for (std::size_t j = 0; j < sf.cols; ++j)
    if (sf.artificial[j]) {
      phase1[j] = 1.0;
      any_artificial = true;
    }
  if (any_artificial) {
    const auto outcome = run_phase(t, phase1, allowed, options, stats);
    if (outcome == PhaseOutcome::iteration_limit || outcome == PhaseOutcome::breakdown)
      return failure(Status::numerical_failure, "phase 1 did not converge", stats.iterations);
    double bmax = 1.0;
    for (double v : sf.b) bmax = std::max(bmax, std::fabs(v));
    if (t.objective(phase1) > options.feasibility_tolerance * bmax)
      return failure(Status::infeasible, "phase 1 optimum is positive", stats.iterations);
    // Drive zero-level artificials out of the basis where possible; rows
    // where that is impossible are redundant.
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!sf.artificial[t.basic(i)]) continue;
      std::size_t best = npos;
      for (std::size_t j = 0; j < sf.cols; ++j) {
        if (sf.artificial[j]) continue;
        if (std::fabs(t.at(i, j)) <= 1e-9) continue;
        if (best == npos || std::fabs(t.at(i, j)) > std::fabs(t.at(i, best))) best = j;
      }
      if (best != npos) {
        t.pivot(i, best);
        t.clamp_rhs(options.feasibility_tolerance);
      }
    }
  }

  // Phase 2.
  {
    const auto outcome = run_phase(t, sf.cost, allowed, options, stats);
    if (outcome == PhaseOutcome::unbounded)
      return failure(Status::unbounded, "objective unbounded", stats.iterations);
    if (outcome != PhaseOutcome::optimal)
      return failure(Status::numerical_failure, "phase 2 did not converge", stats.iterations);
  }

  // Lexicographic phase: only columns with zero primary reduced cost may
  // enter, which keeps the primary objective fixed.
  bool secondary_unbounded = false;
  if (!problem.secondary_objective.empty()) {
    std::vector<double> d;
    t.reduced_costs(sf.cost, d);
    double cmax = 1.0;
    for (double c : sf.cost) cmax = std::max(cmax, std::fabs(c));
    std::vector<char> tie_allowed(allowed);
    for (std::size_t j = 0; j < sf.cols; ++j)
      if (std::fabs(d[j]) > options.optimality_tolerance * cmax) tie_allowed[j] = 0;
    const auto outcome = run_phase(t, sf.cost2, tie_allowed, options, stats);
    if (outcome == PhaseOutcome::unbounded)
      secondary_unbounded = true;
    else if (outcome != PhaseOutcome::optimal)
      return failure(Status::numerical_failure, "secondary phase did not converge",
                     stats.iterations);
  }

  // Refactor the final basis from the original data.
  const std::size_t m = sf.rows;
  std::vector<double> B(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) B[i * m + k] = sf.at(i, t.basic(k));
  std::vector<double> xb(sf.b);
  std::vector<double> y(m);
  for (std::size_t k = 0; k < m; ++k) y[k] = sf.cost[t.basic(k)];
  if (m > 0 && (!solve_dense(B, xb, m, false) || !solve_dense(B, y, m, true)))
    return failure(Status::numerical_failure, "final basis is singular", stats.iterations);

  std::vector<double> z(sf.cols, 0.0);
  for (std::size_t k = 0; k < m; ++k) z[t.basic(k)] = xb[k];

  Solution s;
  s.status = Status::optimal;
  s.iterations = stats.iterations;
  s.used_bland = stats.used_bland;
  s.secondary_unbounded = secondary_unbounded;
  const std::size_t n = problem.variable_count();
  s.primal.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = z[sf.plus_col[j]];
    if (sf.minus_col[j] != npos) v -= z[sf.minus_col[j]];
    s.primal[j] = v;
  }
  const double sign = problem.sense == Sense::maximize ? -1.0 : 1.0;
  s.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) s.duals[i] = sign * sf.row_factor[i] * y[i];
  s.reduced_costs.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double r = problem.objective[j];
    for (std::size_t i = 0; i < m; ++i) r -= problem.constraints[i].coefficients[j] * s.duals[i];
    s.reduced_costs[j] = r;
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += problem.objective[j] * s.primal[j];
  s.objective_value = obj;
  if (!problem.secondary_objective.empty()) {
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) v += problem.secondary_objective[j] * s.primal[j];
    s.secondary_value = v;
  }

  const ResidualReport report = certify(problem, s);
  if (!report.within(options.certification_tolerance)) {
    std::ostringstream msg;
    msg << "certification failed: primal " << report.primal << ", dual " << report.dual
        << ", complementarity " << report.complementarity << ", gap "
        << report.relative_duality_gap;
    s.status = Status::numerical_failure;
    s.message = msg.str();
  }
  return s;
}

ResidualReport certify(const Problem& problem, const Solution& solution) {
  ResidualReport r;
  const std::size_t n = problem.variable_count();
  const std::size_t m = problem.constraint_count();
  if (solution.primal.size() != n || solution.duals.size() != m) {
    r.primal = r.dual = r.complementarity = r.relative_duality_gap =
        std::numeric_limits<double>::infinity();
    return r;
  }
  const bool maximize = problem.sense == Sense::maximize;

  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    double act = 0.0;
    for (std::size_t j = 0; j < n; ++j) act += c.coefficients[j] * solution.primal[j];
    const double slack = c.rhs - act;
    double viol = 0.0;
    switch (c.relation) {
      case Relation::equal:
        viol = std::fabs(slack);
        break;
      case Relation::less_equal:
        viol = std::max(0.0, -slack);
        break;
      case Relation::greater_equal:
        viol = std::max(0.0, slack);
        break;
    }
    r.primal = std::max(r.primal, viol / std::max(1.0, std::fabs(c.rhs)));

    const double y = solution.duals[i];
    double dviol = 0.0;
    if (c.relation == Relation::less_equal)
      dviol = maximize ? std::max(0.0, -y) : std::max(0.0, y);
    else if (c.relation == Relation::greater_equal)
      dviol = maximize ? std::max(0.0, y) : std::max(0.0, -y);
    r.dual = std::max(r.dual, dviol);
    r.complementarity = std::max(r.complementarity, std::fabs(y * slack));
    dual_obj += c.rhs * y;
  }

  double primal_obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = solution.primal[j];
    primal_obj += problem.objective[j] * x;
    double rc = problem.objective[j];
    for (std::size_t i = 0; i < m; ++i) rc -= problem.constraints[i].coefficients[j] * solution.duals[i];
    if (problem.domains[j] == Domain::nonnegative) {
      r.primal = std::max(r.primal, std::max(0.0, -x));
      r.dual = std::max(r.dual, maximize ? std::max(0.0, rc) : std::max(0.0, -rc));
    } else {
      r.dual = std::max(r.dual, std::fabs(rc));
    }
    r.complementarity = std::max(r.complementarity, std::fabs(rc * x));
  }
  r.duality_gap = std::fabs(primal_obj - dual_obj);
  r.relative_duality_gap = r.duality_gap / std::max(1.0, std::fabs(primal_obj));
  return r;
}

namespace {

std::string lp_name(const std::string& label) {
  std::string out;
  for (char ch : label) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) ||
                    std::string_view("!\"#$%&()/,.;?@_`'{}|~").find(ch) != std::string_view::npos;
    out += ok ? ch : '_';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])) || out[0] == '.' ||
      out[0] == 'e' || out[0] == 'E')
    out = "x_" + out;
  return out;
}

void write_terms(std::ostream& out, const std::vector<double>& coef,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (std::size_t j = 0; j < coef.size(); ++j) {
    if (coef[j] == 0.0) continue;
    out << (coef[j] < 0.0 ? " - " : (first ? " " : " + ")) << std::fabs(coef[j]) << ' '
        << names[j];
    first = false;
  }
  if (first) out << " 0 " << (names.empty() ? "x_none" : names[0]);
}

}  // namespace

void write_lp_format(const Problem& problem, std::ostream& out) {
  std::vector<std::string> names;
  names.reserve(problem.variable_count());
  for (const auto& l : problem.variable_labels) names.push_back(lp_name(l));

  const auto old_precision = out.precision(17);
  out << "\\ vga linear program dump\n";
  out << (problem.sense == Sense::maximize ? "Maximize\n" : "Minimize\n");
  out << " obj:";
  write_terms(out, problem.objective, names);
  out << "\nSubject To\n";
  for (const auto& c : problem.constraints) {
    out << ' ' << lp_name(c.label) << ':';
    write_terms(out, c.coefficients, names);
    switch (c.relation) {
      case Relation::equal:
        out << " = ";
        break;
      case Relation::less_equal:
        out << " <= ";
        break;
      case Relation::greater_equal:
        out << " >= ";
        break;
    }
    out << c.rhs << '\n';
  }
  bool any_free = false;
  for (auto d : problem.domains) any_free = any_free || d == Domain::free;
  if (any_free) {
    out << "Bounds\n";
    for (std::size_t j = 0; j < names.size(); ++j)
      if (problem.domains[j] == Domain::free) out << ' ' << names[j] << " free\n";
  }
  out << "End\n";
  out.precision(old_precision);
}

}  // namespace vga::lp
