#pragma once

#include <string_view>

#include "vga/assessment.hpp"

namespace vga {

// Stage I: worst-practice model over all alternatives.

// Maximize tau * (sum q + sum p) over intensities and adjustment rates.
lp::Problem build_owpt_tap(const DecisionMatrix& matrix, std::string_view o, double tau);

// Minimize the virtual gap over prices; the LP dual of the program above.
lp::Problem build_owpt_tvg(const DecisionMatrix& matrix, std::string_view o, double tau);

Assessment evaluate_owpt(const DecisionMatrix& matrix, std::string_view o,
                         const Settings& settings = {});

// Worst set = zero-gap alternatives, cross-checked against the union of
// all peer sets.
StageOneResult stage_one(const DecisionMatrix& matrix, const Settings& settings = {});

}  // namespace vga
