#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "vga/assessment.hpp"

namespace vga::detail {

std::size_t require_dmu(const DecisionMatrix& matrix, std::string_view id);

double likert_lower(const MetricSpec& spec);
double likert_upper(const MetricSpec& spec);

// Own virtual input and output of column o under the given prices, Likert
// penalty terms included, with the sign convention of the stage.
double own_alpha(const DecisionMatrix& m, Stage stage, std::size_t o,
                 const std::vector<double>& v, const std::vector<double>& dx);
double own_beta(const DecisionMatrix& m, Stage stage, std::size_t o,
                const std::vector<double>& u, const std::vector<double>& dy);

// Stage convention for the price-side gap given own alpha and beta.
double stage_gap(Stage stage, double alpha, double beta);

struct Pricing {
  PriceStep step;  // tau = 1 values
  std::string source;
  bool secondary_unbounded = false;
  std::size_t iterations = 0;
};

// Solves the rate program and picks a price vector among the optimal
// solutions of the price program, as documented in the README.
struct Solved {
  std::vector<double> pi;  // aligned with compared
  std::vector<double> q;
  std::vector<double> p;
  Pricing pricing;
};

Solved solve_stage(const DecisionMatrix& m, Stage stage, std::size_t o,
                   const std::vector<std::size_t>& compared, const lp::Problem& tap,
                   const lp::Problem& tvg_lexicographic, const Settings& settings);

Assessment assemble(const DecisionMatrix& m, Stage stage, std::size_t o,
                    const std::vector<std::size_t>& compared, const Solved& solved,
                    const Settings& settings);

}  // namespace vga::detail
