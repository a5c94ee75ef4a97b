#include "vga/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stage_common.hpp"
#include "vga/ohpt.hpp"
#include "vga/owpt.hpp"

namespace vga {

namespace {

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double composite(const Assessment& a, const DecisionMatrix& m, std::size_t metric) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.compared.size(); ++c)
    s += m.value(metric, a.compared[c]) * a.intensities[c];
  return s;
}

double virtual_input(const Assessment& a, const DecisionMatrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.inputs().size(); ++i) s += m.value(m.inputs()[i], j) * a.prices_in[i];
  return s;
}

double virtual_output(const Assessment& a, const DecisionMatrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.outputs().size(); ++r)
    s += m.value(m.outputs()[r], j) * a.prices_out[r];
  return s;
}

}  // namespace

double check_duality(const Assessment& a, const DecisionMatrix& m) {
  const double delta = a.tau_star * (sum(a.rates_in) + sum(a.rates_out));
  const double alpha = detail::own_alpha(m, a.stage, a.dmu, a.prices_in, a.likert_prices_in);
  const double beta = detail::own_beta(m, a.stage, a.dmu, a.prices_out, a.likert_prices_out);
  return std::fabs(delta - detail::stage_gap(a.stage, alpha, beta));
}

std::vector<NamedResidual> check_scsc(const Assessment& a, const DecisionMatrix& m) {
  std::vector<NamedResidual> out;
  const bool one = a.stage == Stage::owpt;
  const double tau = a.tau_star;
  const std::size_t o = a.dmu;

  // Intensity x pairwise gap.
  for (std::size_t c = 0; c < a.compared.size(); ++c) {
    const std::size_t j = a.compared[c];
    const double gap = virtual_output(a, m, j) - virtual_input(a, m, j);
    out.push_back({labels::intensity(m.dmu(j)), a.intensities[c] * gap});
  }
  for (std::size_t i = 0; i < m.inputs().size(); ++i) {
    const std::size_t k = m.inputs()[i];
    const auto& spec = m.metric(k);
    const double x = m.value(k, o);
    const double q = a.rates_in[i];
    const double v = a.prices_in[i];
    const double d = a.likert_prices_in[i];
    // Rate x price-floor (ceiling) slack.
    const double floor = one ? x * (v + d) - tau : tau - x * (v - d);
    out.push_back({labels::input_rate(spec.id), q * floor});
    // Price x target row slack.
    const double adjusted = x * (1.0 + (one ? q : -q));
    out.push_back({labels::input_price(spec.id), v * (composite(a, m, k) - adjusted)});
    if (spec.ordinal()) {
      const double slack = one ? detail::likert_upper(spec) - adjusted
                               : adjusted - detail::likert_lower(spec);
      out.push_back({labels::input_likert(spec.id), d * slack});
    }
  }
  for (std::size_t r = 0; r < m.outputs().size(); ++r) {
    const std::size_t k = m.outputs()[r];
    const auto& spec = m.metric(k);
    const double y = m.value(k, o);
    const double p = a.rates_out[r];
    const double u = a.prices_out[r];
    const double d = a.likert_prices_out[r];
    const double floor = one ? y * (u + d) - tau : tau - y * (u - d);
    out.push_back({labels::output_rate(spec.id), p * floor});
    const double adjusted = y * (1.0 + (one ? -p : p));
    out.push_back({labels::output_price(spec.id), u * (adjusted - composite(a, m, k))});
    if (spec.ordinal()) {
      const double slack = one ? adjusted - detail::likert_lower(spec)
                               : detail::likert_upper(spec) - adjusted;
      out.push_back({labels::output_likert(spec.id), d * slack});
    }
  }
  for (auto& r : out) r.value = std::fabs(r.value);
  return out;
}

TargetReport check_targets(const Assessment& a, const DecisionMatrix& m) {
  TargetReport t;
  const bool one = a.stage == Stage::owpt;
  const std::size_t o = a.dmu;
  auto add = [&](std::size_t k, double rate, double price, bool input) {
    const auto& spec = m.metric(k);
    const double x = m.value(k, o);
    // Stage I expands inputs and contracts outputs; Stage II the reverse.
    const double adjusted = x * (1.0 + ((input == one) ? rate : -rate));
    const double comp = composite(a, m, k);
    TargetResidual r;
    r.metric = spec.id;
    r.adjusted = adjusted;
    r.composite = comp;
    r.priced = std::fabs(price * x) > 1e-9;
    const double scale = std::max(1.0, std::fabs(x));
    r.strict = std::fabs(adjusted - comp) / scale;
    if (one || r.priced) {
      r.binding = r.strict;
    } else {
      // Stage II rows: composite input >= adjusted, composite output <= adjusted.
      r.binding = std::max(0.0, input ? adjusted - comp : comp - adjusted) / scale;
    }
    t.strict_max = std::max(t.strict_max, r.strict);
    t.binding_max = std::max(t.binding_max, r.binding);
    t.metrics.push_back(r);
    if (spec.ordinal()) {
      const double slack = 1e-9 * std::max(1.0, detail::likert_upper(spec));
      t.likert.push_back({spec.id, adjusted,
                          adjusted >= detail::likert_lower(spec) - slack &&
                              adjusted <= detail::likert_upper(spec) + slack});
    }
  };
  for (std::size_t i = 0; i < m.inputs().size(); ++i)
    add(m.inputs()[i], a.rates_in[i], a.prices_in[i], true);
  for (std::size_t r = 0; r < m.outputs().size(); ++r)
    add(m.outputs()[r], a.rates_out[r], a.prices_out[r], false);

  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  std::size_t n_in = m.inputs().size();
  for (std::size_t i = 0; i < n_in; ++i) alpha_hat += t.metrics[i].adjusted * a.prices_in[i];
  for (std::size_t r = 0; r < m.outputs().size(); ++r)
    beta_hat += t.metrics[n_in + r].adjusted * a.prices_out[r];
  t.meridian = std::fabs(alpha_hat - beta_hat);
  return t;
}

double cross_solve(const Assessment& a, const DecisionMatrix& m,
                   const std::vector<std::size_t>& comparison_set, const Settings& settings) {
  const std::string& id = a.dmu_id;
  double worst = 0.0;
  auto compare = [&](double tau, double expected) {
    lp::Problem tap, tvg;
    if (a.stage == Stage::owpt) {
      tap = build_owpt_tap(m, id, tau);
      tvg = build_owpt_tvg(m, id, tau);
    } else {
      tap = build_ohpt_tap(m, comparison_set, id, tau);
      tvg = build_ohpt_tvg(m, comparison_set, id, tau);
    }
    const auto s1 = lp::solve(tap, settings.lp);
    const auto s2 = lp::solve(tvg, settings.lp);
    if (!s1.optimal() || !s2.optimal()) {
      worst = std::numeric_limits<double>::infinity();
      return;
    }
    worst = std::max(worst, std::fabs(s1.objective_value - s2.objective_value));
    worst = std::max(worst, std::fabs(s1.objective_value - expected));
  };
  compare(1.0, a.step1_raw.delta);
  compare(a.tau_star, a.delta_star);
  return worst;
}

VerificationReport verify(const Assessment& a, const DecisionMatrix& m,
                          const std::vector<std::size_t>& comparison_set,
                          const VerifyOptions& options) {
  VerificationReport r;
  r.dmu_id = a.dmu_id;
  r.stage = a.stage;
  const double tol = options.tolerance;
  const bool one = a.stage == Stage::owpt;
  const std::size_t o = a.dmu;

  r.duality_gap = check_duality(a, m);
  r.scsc = check_scsc(a, m);
  for (const auto& s : r.scsc) r.scsc_max_residual = std::max(r.scsc_max_residual, s.value);
  r.targets = check_targets(a, m);
  if (options.cross_solve) r.cross_solve_gap = cross_solve(a, m, comparison_set, options.settings);

  const double alpha = detail::own_alpha(m, a.stage, o, a.prices_in, a.likert_prices_in);
  const double beta = detail::own_beta(m, a.stage, o, a.prices_out, a.likert_prices_out);
  r.normalization_residual = std::fabs((one ? beta : alpha) - 1.0);
  const auto& s = a.step1_raw;
  const double raw = one ? s.alpha / s.beta : s.beta / s.alpha;
  r.score_residual = std::fabs(raw - (one ? alpha / beta : beta / alpha));
  const double gap = detail::stage_gap(a.stage, alpha, beta);
  r.gap_in_range = gap >= -tol && gap < 1.0;

  for (std::size_t c = 0; c < a.compared.size(); ++c) {
    const std::size_t j = a.compared[c];
    if (j == o) continue;
    const double aj = virtual_input(a, m, j);
    const double bj = virtual_output(a, m, j);
    r.pair_violation = std::max(r.pair_violation, aj - bj);
    if (a.intensities[c] > options.settings.epsilon)
      r.peer_residual = std::max(r.peer_residual, std::fabs(bj - aj));
  }
  auto most_negative = [&](const std::vector<double>& v) {
    for (double x : v) r.sign_violation = std::max(r.sign_violation, -x);
  };
  most_negative(a.rates_in);
  most_negative(a.rates_out);
  most_negative(a.intensities);
  most_negative(a.likert_prices_in);
  most_negative(a.likert_prices_out);
  if (!one) {
    most_negative(a.prices_in);
    most_negative(a.prices_out);
  }

  auto check = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  check(r.duality_gap <= tol, "duality");
  check(r.cross_solve_gap <= tol, "cross-solve");
  check(r.scsc_max_residual <= tol, "complementary-slackness");
  check(r.targets.binding_max <= options.target_tolerance, "target-replication");
  check(r.targets.meridian <= tol, "benchmark-scales");
  bool likert_ok = true;
  for (const auto& l : r.targets.likert) likert_ok = likert_ok && l.ok;
  check(likert_ok, "likert-bounds");
  check(r.normalization_residual <= tol, "normalization");
  check(r.score_residual <= tol, "score-consistency");
  check(r.gap_in_range, "gap-range");
  check(r.pair_violation <= tol, "reference-line");
  check(r.sign_violation <= tol, "sign");
  check(r.peer_residual <= tol, "peer-gap");
  r.passed = r.failures.empty();
  return r;
}

TechnologySet technology_set(const Assessment& a, const DecisionMatrix& m) {
  TechnologySet t;
  t.stage = a.stage;
  t.reference_line = a.stage == Stage::owpt ? "prime-meridian" : "equator";
  t.points.push_back({a.dmu_id, a.alpha_self, a.beta_self, "self"});
  for (std::size_t c = 0; c < a.compared.size(); ++c) {
    const std::size_t j = a.compared[c];
    if (j == a.dmu) continue;
    const bool peer = std::find(a.peers.begin(), a.peers.end(), m.dmu(j)) != a.peers.end();
    t.points.push_back({m.dmu(j), a.alpha_pairs[c], a.beta_pairs[c], peer ? "peer" : "other"});
  }
  t.points.push_back({"T", a.alpha_hat, a.beta_hat, "target"});
  return t;
}

}  // namespace vga
