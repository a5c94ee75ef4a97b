#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vga::lp {

enum class Sense { maximize, minimize };
enum class Relation { equal, less_equal, greater_equal };
enum class Domain { nonnegative, free };
enum class Status { optimal, infeasible, unbounded, numerical_failure };

const char* to_string(Status status);

struct Constraint {
  std::string label;
  std::vector<double> coefficients;  // one per variable
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

// Dense linear program.  Variables are addressed by position; labels are
// carried through to the debug dump and to diagnostics.
struct Problem {
  Sense sense = Sense::maximize;
  std::vector<double> objective;
  std::vector<Domain> domains;
  std::vector<std::string> variable_labels;
  std::vector<Constraint> constraints;

  // Optional lexicographic tie-break: among the optimal solutions of the
  // primary objective, optimize this one as well.  Empty means none.
  std::vector<double> secondary_objective;
  Sense secondary_sense = Sense::minimize;

  Problem() = default;
  explicit Problem(Sense s) : sense(s) {}

  std::size_t variable_count() const { return objective.size(); }
  std::size_t constraint_count() const { return constraints.size(); }

  std::size_t add_variable(std::string label, double cost,
                           Domain domain = Domain::nonnegative);
  // Coefficients are given sparsely as (variable, value) pairs.
  std::size_t add_constraint(std::string label,
                             const std::vector<std::pair<std::size_t, double>>& terms,
                             Relation relation, double rhs);

  std::optional<std::size_t> find_variable(const std::string& label) const;
  std::optional<std::size_t> find_constraint(const std::string& label) const;

  // Returns a description of the first structural defect (non-rectangular
  // row, duplicate label, non-finite data), or nullopt when well formed.
  std::optional<std::string> defect() const;
};

struct Solution {
  Status status = Status::numerical_failure;
  double objective_value = 0.0;
  std::vector<double> primal;
  // Shadow prices: d(objective)/d(rhs) for each constraint.
  std::vector<double> duals;
  // c_j - a_j^T y for each variable.
  std::vector<double> reduced_costs;
  std::size_t iterations = 0;
  bool used_bland = false;
  // Set when a secondary objective was requested.
  std::optional<double> secondary_value;
  bool secondary_unbounded = false;
  std::string message;

  bool optimal() const { return status == Status::optimal; }
};

struct ResidualReport {
  double primal = 0.0;             // max scaled row / bound violation
  double dual = 0.0;               // max dual sign / reduced-cost violation
  double complementarity = 0.0;    // max |dual * slack|, |reduced cost * value|
  double duality_gap = 0.0;        // |c^T x - b^T y|
  double relative_duality_gap = 0.0;

  bool within(double tol) const;
};

struct Options {
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double pivot_tolerance = 1e-11;
  double ratio_tie_tolerance = 1e-9;
  double certification_tolerance = 1e-9;
};

// Two-phase dense primal simplex.  Deterministic: the same problem always
// yields bit-identical output.
Solution solve(const Problem& problem, const Options& options = {});

ResidualReport certify(const Problem& problem, const Solution& solution);

// CPLEX LP text format, for cross-checking against third-party solvers.
void write_lp_format(const Problem& problem, std::ostream& out);

}  // namespace vga::lp
