#include "lp_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {
namespace {

using vga::lp::Relation;

// Gaussian elimination with full pivoting; returns false on singularity.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::fabs(a[i][j]) > std::fabs(a[pr][pc])) {
          pr = i;
          pc = j;
        }
    if (std::fabs(a[pr][pc]) < 1e-12) return false;
    std::swap(a[pr], a[k]);
    std::swap(b[pr], b[k]);
    for (auto& row : a) std::swap(row[pc], row[k]);
    std::swap(col[pc], col[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> y(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * y[j];
    y[k] = s / a[k][k];
  }
  x.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) x[col[k]] = y[k];
  return true;
}

}  // namespace

Enumeration enumerate_vertices(const vga::lp::Problem& p, double tol) {
  const std::size_t n = p.variable_count();
  for (auto d : p.domains)
    if (d != vga::lp::Domain::nonnegative) throw std::invalid_argument("oracle needs x >= 0");

  // Candidate hyperplanes: every constraint row, then x_j = 0.  Any n of
  // them with a unique feasible intersection is a vertex; equality rows
  // need not be among the chosen n since feasibility enforces them.
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& c : p.constraints) planes.push_back({c.coefficients, c.rhs});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    planes.push_back({e, 0.0});
  }

  auto feasible = [&](const std::vector<double>& x) {
    for (double v : x)
      if (v < -tol) return false;
    for (const auto& c : p.constraints) {
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) act += c.coefficients[j] * x[j];
      const double scale = std::max(1.0, std::fabs(c.rhs));
      if (c.relation == Relation::equal && std::fabs(act - c.rhs) > tol * scale) return false;
      if (c.relation == Relation::less_equal && act > c.rhs + tol * scale) return false;
      if (c.relation == Relation::greater_equal && act < c.rhs - tol * scale) return false;
    }
    return true;
  };

  Enumeration out;
  const bool maximize = p.sense == vga::lp::Sense::maximize;
  const std::size_t k = planes.size();
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  if (n == 0 || n > k) return out;
  while (true) {
    {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (auto s : pick) {
        a.push_back(planes[s].a);
        b.push_back(planes[s].b);
      }
      std::vector<double> x;
      if (solve_square(a, b, x) && feasible(x)) {
        double obj = 0.0;
        for (std::size_t j = 0; j < n; ++j) obj += p.objective[j] * x[j];
        if (!out.feasible || (maximize ? obj > out.best : obj < out.best)) out.best = obj;
        out.feasible = true;
        ++out.vertices;
      }
    }
    // Next n-combination of k planes.
    std::size_t i = n;
    while (i-- > 0 && pick[i] == k - n + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

vga::lp::Problem random_bounded_lp(std::mt19937_64& rng, std::size_t max_vars,
                                   std::size_t max_rows) {
  std::uniform_int_distribution<std::size_t> nvar(1, max_vars);
  std::uniform_int_distribution<std::size_t> nrow(1, max_rows);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> pos(1, 5);
  std::uniform_int_distribution<int> rel(0, 5);
  std::uniform_int_distribution<int> rhs(0, 12);
  std::bernoulli_distribution maximize(0.5);

  const std::size_t n = nvar(rng);
  const std::size_t m = nrow(rng);
  vga::lp::Problem p(maximize(rng) ? vga::lp::Sense::maximize : vga::lp::Sense::minimize);
  for (std::size_t j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j), coef(rng));

  std::vector<std::pair<std::size_t, double>> budget;
  for (std::size_t j = 0; j < n; ++j) budget.emplace_back(j, pos(rng));
  p.add_constraint("budget", budget, Relation::less_equal, pos(rng) * 4.0);
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < n; ++j) terms.emplace_back(j, coef(rng));
    const int r = rel(rng);
    const Relation relation = r < 3 ? Relation::less_equal
                              : r < 5 ? Relation::greater_equal
                                      : Relation::equal;
    p.add_constraint("c" + std::to_string(i), terms, relation, rhs(rng) - 4.0);
  }
  return p;
}

}  // namespace oracle
