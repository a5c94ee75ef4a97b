#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "vga/assessment.hpp"

namespace vga {

// Stage II: hypo model of one worst-set member against the others.  The
// comparison set holds matrix column indices and must contain o plus at
// least one other member.

lp::Problem build_ohpt_tap(const DecisionMatrix& matrix,
                           const std::vector<std::size_t>& comparison_set, std::string_view o,
                           double tau);

lp::Problem build_ohpt_tvg(const DecisionMatrix& matrix,
                           const std::vector<std::size_t>& comparison_set, std::string_view o,
                           double tau);

Assessment evaluate_ohpt(const DecisionMatrix& matrix,
                         const std::vector<std::size_t>& comparison_set, std::string_view o,
                         const Settings& settings = {});

StageTwoResult stage_two(const DecisionMatrix& matrix,
                         const std::vector<std::size_t>& comparison_set,
                         const Settings& settings = {});

}  // namespace vga
