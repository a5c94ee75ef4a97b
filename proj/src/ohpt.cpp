#include "vga/ohpt.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stage_common.hpp"

namespace vga {

namespace {

std::vector<std::size_t> others(const DecisionMatrix& m, const std::vector<std::size_t>& set,
                                std::size_t o) {
  std::set<std::size_t> seen;
  bool has_o = false;
  std::vector<std::size_t> out;
  for (std::size_t j : set) {
    if (j >= m.dmu_count()) throw std::invalid_argument("comparison set index out of range");
    if (!seen.insert(j).second) throw std::invalid_argument("comparison set repeats an alternative");
    if (j == o)
      has_o = true;
    else
      out.push_back(j);
  }
  if (!has_o) throw AssessmentError("not a member of the comparison set", m.dmu(o));
  if (out.empty())
    throw DegenerateStageError("comparison set has no other member to compare against", m.dmu(o));
  return out;
}

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("unified goal price must be positive");
}

}  // namespace

lp::Problem build_ohpt_tap(const DecisionMatrix& m, const std::vector<std::size_t>& set,
                           std::string_view o_id, double tau) {
  check_tau(tau);
  const std::size_t o = detail::require_dmu(m, o_id);
  const auto compared = others(m, set, o);
  lp::Problem p(lp::Sense::minimize);
  std::vector<std::size_t> pi, q, r;
  for (std::size_t j : compared) pi.push_back(p.add_variable(labels::intensity(m.dmu(j)), 0.0));
  for (std::size_t k : m.inputs()) q.push_back(p.add_variable(labels::input_rate(m.metric(k).id), tau));
  for (std::size_t k : m.outputs()) r.push_back(p.add_variable(labels::output_rate(m.metric(k).id), tau));

  for (std::size_t a = 0; a < m.inputs().size(); ++a) {
    const std::size_t k = m.inputs()[a];
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t c = 0; c < compared.size(); ++c) terms.emplace_back(pi[c], m.value(k, compared[c]));
    terms.emplace_back(q[a], m.value(k, o));
    p.add_constraint(labels::input_price(m.metric(k).id), terms, lp::Relation::greater_equal,
                     m.value(k, o));
  }
  for (std::size_t b = 0; b < m.outputs().size(); ++b) {
    const std::size_t k = m.outputs()[b];
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t c = 0; c < compared.size(); ++c) terms.emplace_back(pi[c], -m.value(k, compared[c]));
    terms.emplace_back(r[b], m.value(k, o));
    p.add_constraint(labels::output_price(m.metric(k).id), terms, lp::Relation::greater_equal,
                     -m.value(k, o));
  }
  // x(1-q) >= lower and y(1+p) <= upper on ordinal metrics.
  for (std::size_t a = 0; a < m.inputs().size(); ++a) {
    const auto& spec = m.metric(m.inputs()[a]);
    if (!spec.ordinal()) continue;
    const double x = m.value(m.inputs()[a], o);
    p.add_constraint(labels::input_likert(spec.id), {{q[a], -x}}, lp::Relation::greater_equal,
                     detail::likert_lower(spec) - x);
  }
  for (std::size_t b = 0; b < m.outputs().size(); ++b) {
    const auto& spec = m.metric(m.outputs()[b]);
    if (!spec.ordinal()) continue;
    const double y = m.value(m.outputs()[b], o);
    p.add_constraint(labels::output_likert(spec.id), {{r[b], -y}}, lp::Relation::greater_equal,
                     -(detail::likert_upper(spec) - y));
  }
  return p;
}

lp::Problem build_ohpt_tvg(const DecisionMatrix& m, const std::vector<std::size_t>& set,
                           std::string_view o_id, double tau) {
  check_tau(tau);
  const std::size_t o = detail::require_dmu(m, o_id);
  const auto compared = others(m, set, o);
  lp::Problem p(lp::Sense::maximize);
  std::vector<std::size_t> v, u, dx, dy;
  for (std::size_t k : m.inputs())
    v.push_back(p.add_variable(labels::input_price(m.metric(k).id), m.value(k, o)));
  for (std::size_t k : m.outputs())
    u.push_back(p.add_variable(labels::output_price(m.metric(k).id), -m.value(k, o)));
  for (std::size_t k : m.inputs())
    dx.push_back(m.metric(k).ordinal()
                     ? p.add_variable(labels::input_likert(m.metric(k).id),
                                      detail::likert_lower(m.metric(k)) - m.value(k, o))
                     : SIZE_MAX);
  for (std::size_t k : m.outputs())
    dy.push_back(m.metric(k).ordinal()
                     ? p.add_variable(labels::output_likert(m.metric(k).id),
                                      -(detail::likert_upper(m.metric(k)) - m.value(k, o)))
                     : SIZE_MAX);

  // Every other member on or above the equator.
  for (std::size_t j : compared) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t a = 0; a < v.size(); ++a) terms.emplace_back(v[a], m.value(m.inputs()[a], j));
    for (std::size_t b = 0; b < u.size(); ++b) terms.emplace_back(u[b], -m.value(m.outputs()[b], j));
    p.add_constraint(labels::intensity(m.dmu(j)), terms, lp::Relation::less_equal, 0.0);
  }
  // Price ceilings.
  for (std::size_t a = 0; a < v.size(); ++a) {
    const std::size_t k = m.inputs()[a];
    const double x = m.value(k, o);
    std::vector<std::pair<std::size_t, double>> terms{{v[a], x}};
    if (dx[a] != SIZE_MAX) terms.emplace_back(dx[a], -x);
    p.add_constraint(labels::input_rate(m.metric(k).id), terms, lp::Relation::less_equal, tau);
  }
  for (std::size_t b = 0; b < u.size(); ++b) {
    const std::size_t k = m.outputs()[b];
    const double y = m.value(k, o);
    std::vector<std::pair<std::size_t, double>> terms{{u[b], y}};
    if (dy[b] != SIZE_MAX) terms.emplace_back(dy[b], -y);
    p.add_constraint(labels::output_rate(m.metric(k).id), terms, lp::Relation::less_equal, tau);
  }
  return p;
}

Assessment evaluate_ohpt(const DecisionMatrix& m, const std::vector<std::size_t>& set,
                         std::string_view o_id, const Settings& settings) {
  const std::size_t o = detail::require_dmu(m, o_id);
  const auto compared = others(m, set, o);

  const lp::Problem tap = build_ohpt_tap(m, set, o_id, 1.0);
  // Among optimal price vectors take the one with the largest own virtual
  // input, which keeps the normalizer away from zero.
  lp::Problem tvg = build_ohpt_tvg(m, set, o_id, 1.0);
  tvg.secondary_sense = lp::Sense::maximize;
  tvg.secondary_objective.assign(tvg.variable_count(), 0.0);
  for (std::size_t k : m.inputs()) {
    const auto& spec = m.metric(k);
    tvg.secondary_objective[*tvg.find_variable(labels::input_price(spec.id))] = m.value(k, o);
    if (spec.ordinal())
      tvg.secondary_objective[*tvg.find_variable(labels::input_likert(spec.id))] =
          detail::likert_lower(spec) - m.value(k, o);
  }

  const auto solved = detail::solve_stage(m, Stage::ohpt, o, compared, tap, tvg, settings);
  return detail::assemble(m, Stage::ohpt, o, compared, solved, settings);
}

StageTwoResult stage_two(const DecisionMatrix& m, const std::vector<std::size_t>& set,
                         const Settings& settings) {
  if (set.size() < 2)
    throw DegenerateStageError("Stage II needs at least two comparison-set members");
  StageTwoResult result;
  result.comparison_set = set;
  for (std::size_t j : set) result.assessments.push_back(evaluate_ohpt(m, set, m.dmu(j), settings));
  return result;
}

}  // namespace vga
