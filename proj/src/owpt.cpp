#include "vga/owpt.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stage_common.hpp"

namespace vga {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("unified goal price must be positive");
}

}  // namespace

lp::Problem build_owpt_tap(const DecisionMatrix& m, std::string_view o_id, double tau) {
  check_tau(tau);
  const std::size_t o = detail::require_dmu(m, o_id);
  lp::Problem p(lp::Sense::maximize);
  std::vector<std::size_t> pi;
  for (std::size_t j = 0; j < m.dmu_count(); ++j)
    pi.push_back(p.add_variable(labels::intensity(m.dmu(j)), 0.0));
  std::vector<std::size_t> q, r;
  for (std::size_t k : m.inputs()) q.push_back(p.add_variable(labels::input_rate(m.metric(k).id), tau));
  for (std::size_t k : m.outputs()) r.push_back(p.add_variable(labels::output_rate(m.metric(k).id), tau));

  for (std::size_t a = 0; a < m.inputs().size(); ++a) {
    const std::size_t k = m.inputs()[a];
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < m.dmu_count(); ++j) terms.emplace_back(pi[j], -m.value(k, j));
    terms.emplace_back(q[a], m.value(k, o));
    p.add_constraint(labels::input_price(m.metric(k).id), terms, lp::Relation::equal, -m.value(k, o));
  }
  for (std::size_t b = 0; b < m.outputs().size(); ++b) {
    const std::size_t k = m.outputs()[b];
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < m.dmu_count(); ++j) terms.emplace_back(pi[j], m.value(k, j));
    terms.emplace_back(r[b], m.value(k, o));
    p.add_constraint(labels::output_price(m.metric(k).id), terms, lp::Relation::equal, m.value(k, o));
  }
  // Adjusted ordinal values stay inside the scale: x(1+q) <= upper, y(1-p) >= lower.
  for (std::size_t a = 0; a < m.inputs().size(); ++a) {
    const auto& spec = m.metric(m.inputs()[a]);
    if (!spec.ordinal()) continue;
    const double x = m.value(m.inputs()[a], o);
    p.add_constraint(labels::input_likert(spec.id), {{q[a], x}}, lp::Relation::less_equal,
                     detail::likert_upper(spec) - x);
  }
  for (std::size_t b = 0; b < m.outputs().size(); ++b) {
    const auto& spec = m.metric(m.outputs()[b]);
    if (!spec.ordinal()) continue;
    const double y = m.value(m.outputs()[b], o);
    p.add_constraint(labels::output_likert(spec.id), {{r[b], y}}, lp::Relation::less_equal,
                     y - detail::likert_lower(spec));
  }
  return p;
}

lp::Problem build_owpt_tvg(const DecisionMatrix& m, std::string_view o_id, double tau) {
  check_tau(tau);
  const std::size_t o = detail::require_dmu(m, o_id);
  lp::Problem p(lp::Sense::minimize);
  std::vector<std::size_t> v, u, dx, dy;
  for (std::size_t k : m.inputs())
    v.push_back(p.add_variable(labels::input_price(m.metric(k).id), -m.value(k, o), lp::Domain::free));
  for (std::size_t k : m.outputs())
    u.push_back(p.add_variable(labels::output_price(m.metric(k).id), m.value(k, o), lp::Domain::free));
  for (std::size_t k : m.inputs())
    dx.push_back(m.metric(k).ordinal()
                     ? p.add_variable(labels::input_likert(m.metric(k).id),
                                      detail::likert_upper(m.metric(k)) - m.value(k, o))
                     : SIZE_MAX);
  for (std::size_t k : m.outputs())
    dy.push_back(m.metric(k).ordinal()
                     ? p.add_variable(labels::output_likert(m.metric(k).id),
                                      m.value(k, o) - detail::likert_lower(m.metric(k)))
                     : SIZE_MAX);

  // Every alternative on or above the prime meridian.
  for (std::size_t j = 0; j < m.dmu_count(); ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t a = 0; a < v.size(); ++a) terms.emplace_back(v[a], -m.value(m.inputs()[a], j));
    for (std::size_t b = 0; b < u.size(); ++b) terms.emplace_back(u[b], m.value(m.outputs()[b], j));
    p.add_constraint(labels::intensity(m.dmu(j)), terms, lp::Relation::greater_equal, 0.0);
  }
  // Price floors.
  for (std::size_t a = 0; a < v.size(); ++a) {
    const std::size_t k = m.inputs()[a];
    const double x = m.value(k, o);
    std::vector<std::pair<std::size_t, double>> terms{{v[a], x}};
    if (dx[a] != SIZE_MAX) terms.emplace_back(dx[a], x);
    p.add_constraint(labels::input_rate(m.metric(k).id), terms, lp::Relation::greater_equal, tau);
  }
  for (std::size_t b = 0; b < u.size(); ++b) {
    const std::size_t k = m.outputs()[b];
    const double y = m.value(k, o);
    std::vector<std::pair<std::size_t, double>> terms{{u[b], y}};
    if (dy[b] != SIZE_MAX) terms.emplace_back(dy[b], y);
    p.add_constraint(labels::output_rate(m.metric(k).id), terms, lp::Relation::greater_equal, tau);
  }
  return p;
}

Assessment evaluate_owpt(const DecisionMatrix& m, std::string_view o_id, const Settings& settings) {
  const std::size_t o = detail::require_dmu(m, o_id);
  std::vector<std::size_t> compared(m.dmu_count());
  for (std::size_t j = 0; j < compared.size(); ++j) compared[j] = j;

  const lp::Problem tap = build_owpt_tap(m, o_id, 1.0);
  // Among optimal price vectors take the one with the smallest own virtual
  // output, i.e. the largest normalization factor.
  lp::Problem tvg = build_owpt_tvg(m, o_id, 1.0);
  tvg.secondary_sense = lp::Sense::minimize;
  tvg.secondary_objective.assign(tvg.variable_count(), 0.0);
  for (std::size_t k : m.outputs()) {
    const auto& spec = m.metric(k);
    tvg.secondary_objective[*tvg.find_variable(labels::output_price(spec.id))] = m.value(k, o);
    if (spec.ordinal())
      tvg.secondary_objective[*tvg.find_variable(labels::output_likert(spec.id))] =
          m.value(k, o) - detail::likert_lower(spec);
  }

  const auto solved = detail::solve_stage(m, Stage::owpt, o, compared, tap, tvg, settings);
  return detail::assemble(m, Stage::owpt, o, compared, solved, settings);
}

StageOneResult stage_one(const DecisionMatrix& m, const Settings& settings) {
  StageOneResult result;
  std::set<std::string> union_of_peers;
  for (std::size_t j = 0; j < m.dmu_count(); ++j) {
    result.assessments.push_back(evaluate_owpt(m, m.dmu(j), settings));
    const auto& a = result.assessments.back();
    union_of_peers.insert(a.peers.begin(), a.peers.end());
    if (a.gap_star <= settings.epsilon * std::max(1.0, a.tau_star)) result.worst_set.push_back(j);
  }
  std::set<std::string> zero_gap;
  for (std::size_t j : result.worst_set) zero_gap.insert(m.dmu(j));
  result.peer_union.assign(union_of_peers.begin(), union_of_peers.end());
  for (const auto& id : zero_gap)
    if (!union_of_peers.count(id)) result.membership_mismatch.push_back(id + " has zero gap but is no peer");
  for (const auto& id : union_of_peers)
    if (!zero_gap.count(id)) result.membership_mismatch.push_back(id + " is a peer with positive gap");
  if (!result.membership_mismatch.empty() && settings.enforce_peer_union) {
    std::string diff;
    for (const auto& d : result.membership_mismatch) diff += "; " + d;
    throw VerificationError("worst set disagrees with the union of peer sets" + diff);
  }
  return result;
}

}  // namespace vga
