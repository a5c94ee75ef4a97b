#include "vga/rank.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vga/ohpt.hpp"
#include "vga/owpt.hpp"

namespace vga {

namespace {

struct Item {
  std::string id;
  std::size_t dmu;
  int stage;
  std::optional<double> gap;
};

// Appends a block of items, sorted by gap (descending when better is
// larger), grouping near-equal gaps into ties.
void append_block(std::vector<Item> items, bool descending, double tol, Ranking& out) {
  std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    const double ga = a.gap.value_or(0.0);
    const double gb = b.gap.value_or(0.0);
    if (ga != gb) return descending ? ga > gb : ga < gb;
    return a.dmu < b.dmu;
  });
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t end = i + 1;
    while (end < items.size() && items[i].gap && items[end].gap &&
           std::fabs(*items[end].gap - *items[i].gap) <= tol)
      ++end;
    // Inside a tie group keep matrix order.
    std::sort(items.begin() + i, items.begin() + end,
              [](const Item& a, const Item& b) { return a.dmu < b.dmu; });
    const std::size_t position = out.ordered.size() + 1;
    std::vector<std::string> group;
    for (std::size_t k = i; k < end; ++k) {
      out.ordered.push_back({position, items[k].id, items[k].dmu, items[k].stage, items[k].gap});
      group.push_back(items[k].id);
    }
    if (group.size() > 1) out.ties.push_back(std::move(group));
    i = end;
  }
}

}  // namespace

Ranking rank(const StageOneResult& stage1, const std::optional<StageTwoResult>& stage2,
             double tol) {
  const std::set<std::size_t> worst(stage1.worst_set.begin(), stage1.worst_set.end());
  std::vector<Item> upper;
  for (const auto& a : stage1.assessments)
    if (!worst.count(a.dmu)) upper.push_back({a.dmu_id, a.dmu, 1, a.gap_star});

  std::vector<Item> lower;
  if (worst.size() == 1) {
    const std::size_t j = *worst.begin();
    for (const auto& a : stage1.assessments)
      if (a.dmu == j) lower.push_back({a.dmu_id, a.dmu, 1, std::nullopt});
  } else if (!worst.empty()) {
    if (!stage2) throw AssessmentError("Stage II results required for a worst set of two or more");
    std::set<std::size_t> covered;
    for (const auto& a : stage2->assessments) {
      if (!worst.count(a.dmu)) throw AssessmentError("Stage II assessed a non-worst alternative", a.dmu_id);
      if (!covered.insert(a.dmu).second) throw AssessmentError("Stage II assessed twice", a.dmu_id);
      lower.push_back({a.dmu_id, a.dmu, 2, a.gap_star});
    }
    if (covered != worst) throw AssessmentError("Stage II does not cover the worst set");
  }

  Ranking out;
  append_block(std::move(upper), true, tol, out);
  append_block(std::move(lower), false, tol, out);
  return out;
}

EliminationTrace eliminate_worst(const DecisionMatrix& matrix, std::size_t rounds, OnTie on_tie,
                                 const Settings& settings) {
  if (rounds < 1) throw std::invalid_argument("need at least one elimination round");
  EliminationTrace trace;
  DecisionMatrix current = matrix;
  for (std::size_t k = 1; k <= rounds; ++k) {
    if (current.dmu_count() < 2) {
      trace.halted = true;
      trace.halt_reason = "fewer than two alternatives remain";
      break;
    }
    const auto s1 = stage_one(current, settings);
    std::optional<StageTwoResult> s2;
    if (s1.worst_set.size() >= 2) s2 = stage_two(current, s1.worst_set, settings);

    EliminationRound round;
    round.round = k;
    round.ranking = rank(s1, s2, settings.epsilon);
    const auto& last = round.ranking.ordered.back();
    for (const auto& e : round.ranking.ordered)
      if (e.position == last.position) round.bottom.push_back(e.dmu_id);
    round.gap = last.gap;
    round.stage = last.stage;

    if (round.bottom.size() == current.dmu_count()) {
      trace.halted = true;
      trace.halt_reason = "all remaining alternatives are tied";
      trace.rounds.push_back(std::move(round));
      break;
    }
    if (round.bottom.size() > 1 && on_tie == OnTie::halt) {
      trace.halted = true;
      trace.halt_reason = "tie at the bottom";
      trace.rounds.push_back(std::move(round));
      break;
    }
    round.removed = round.bottom;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < current.dmu_count(); ++j)
      if (std::find(round.removed.begin(), round.removed.end(), current.dmu(j)) == round.removed.end())
        keep.push_back(j);
    current = current.select(keep);
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

}  // namespace vga
