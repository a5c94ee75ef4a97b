#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vga/assessment.hpp"

namespace vga {

struct RankEntry {
  std::size_t position = 0;  // competition ranking: ties share a position
  std::string dmu_id;
  std::size_t dmu = 0;
  int stage = 1;              // stage that discriminated this alternative
  std::optional<double> gap;  // empty for a singleton worst set
};

struct Ranking {
  std::vector<RankEntry> ordered;
  std::vector<std::vector<std::string>> ties;  // groups of two or more
};

// Non-worst alternatives by decreasing Stage I gap, then the worst set by
// increasing Stage II gap.  Stage II may be absent only when the worst set
// is a singleton.
Ranking rank(const StageOneResult& stage1, const std::optional<StageTwoResult>& stage2,
             double tie_tolerance = 1e-7);

enum class OnTie { halt, report_all };

struct EliminationRound {
  std::size_t round = 0;
  std::vector<std::string> bottom;   // bottom-ranked ids (several when tied)
  std::optional<double> gap;
  int stage = 1;
  std::vector<std::string> removed;  // empty when the round halted
  Ranking ranking;
};

struct EliminationTrace {
  std::vector<EliminationRound> rounds;
  bool halted = false;
  std::string halt_reason;
};

// Runs both stages, removes the bottom-ranked alternative and repeats.
EliminationTrace eliminate_worst(const DecisionMatrix& matrix, std::size_t rounds,
                                 OnTie on_tie = OnTie::halt, const Settings& settings = {});

}  // namespace vga
