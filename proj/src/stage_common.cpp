#include "stage_common.hpp"

#include <algorithm>
#include <cmath>

namespace vga {

const char* to_string(Stage stage) { return stage == Stage::owpt ? "owpt" : "ohpt"; }

}  // namespace vga

namespace vga::detail {

std::size_t require_dmu(const DecisionMatrix& matrix, std::string_view id) {
  auto j = matrix.dmu_index(id);
  if (!j) throw AssessmentError("unknown alternative", std::string(id));
  return *j;
}

double likert_lower(const MetricSpec& spec) { return spec.likert ? spec.likert->lower : 0.0; }
double likert_upper(const MetricSpec& spec) { return spec.likert ? spec.likert->upper : 0.0; }

double own_alpha(const DecisionMatrix& m, Stage stage, std::size_t o,
                 const std::vector<double>& v, const std::vector<double>& dx) {
  double s = 0.0;
  for (std::size_t a = 0; a < m.inputs().size(); ++a) {
    const std::size_t k = m.inputs()[a];
    const double x = m.value(k, o);
    s += x * v[a];
    if (!m.metric(k).ordinal()) continue;
    if (stage == Stage::owpt)
      s -= (likert_upper(m.metric(k)) - x) * dx[a];
    else
      s += (likert_lower(m.metric(k)) - x) * dx[a];
  }
  return s;
}

double own_beta(const DecisionMatrix& m, Stage stage, std::size_t o,
                const std::vector<double>& u, const std::vector<double>& dy) {
  double s = 0.0;
  for (std::size_t b = 0; b < m.outputs().size(); ++b) {
    const std::size_t k = m.outputs()[b];
    const double y = m.value(k, o);
    s += y * u[b];
    if (!m.metric(k).ordinal()) continue;
    if (stage == Stage::owpt)
      s += (y - likert_lower(m.metric(k))) * dy[b];
    else
      s += (likert_upper(m.metric(k)) - y) * dy[b];
  }
  return s;
}

double stage_gap(Stage stage, double alpha, double beta) {
  return stage == Stage::owpt ? beta - alpha : alpha - beta;
}

namespace {

double normalizer(Stage stage, const PriceStep& s) {
  return stage == Stage::owpt ? s.beta : s.alpha;
}

void finish_step(const DecisionMatrix& m, Stage stage, std::size_t o, double delta,
                 PriceStep& s) {
  s.tau = 1.0;
  s.alpha = own_alpha(m, stage, o, s.v, s.dx);
  s.beta = own_beta(m, stage, o, s.u, s.dy);
  s.gap = stage_gap(stage, s.alpha, s.beta);
  s.delta = delta;
}

double nonneg(double x) { return std::max(0.0, x); }

// Reads prices either from labelled variables of the price program or from
// labelled constraint duals of the rate program.
template <typename Lookup>
PriceStep read_prices(const DecisionMatrix& m, Stage stage, Lookup&& lookup) {
  PriceStep s;
  const bool signed_prices = stage == Stage::owpt;
  for (std::size_t k : m.inputs()) {
    const auto& spec = m.metric(k);
    const double v = lookup(labels::input_price(spec.id));
    s.v.push_back(signed_prices ? v : nonneg(v));
    s.dx.push_back(spec.ordinal() ? nonneg(lookup(labels::input_likert(spec.id))) : 0.0);
  }
  for (std::size_t k : m.outputs()) {
    const auto& spec = m.metric(k);
    const double u = lookup(labels::output_price(spec.id));
    s.u.push_back(signed_prices ? u : nonneg(u));
    s.dy.push_back(spec.ordinal() ? nonneg(lookup(labels::output_likert(spec.id))) : 0.0);
  }
  return s;
}

}  // namespace

Solved solve_stage(const DecisionMatrix& m, Stage stage, std::size_t o,
                   const std::vector<std::size_t>& compared, const lp::Problem& tap,
                   const lp::Problem& tvg_lexicographic, const Settings& settings) {
  const std::string& id = m.dmu(o);
  const lp::Solution rates = lp::solve(tap, settings.lp);
  if (!rates.optimal())
    throw NumericalError(std::string("rate program ") + lp::to_string(rates.status) +
                             (rates.message.empty() ? "" : ": " + rates.message),
                         id);

  Solved out;
  auto primal = [&](const std::string& label) {
    auto j = tap.find_variable(label);
    return j ? nonneg(rates.primal[*j]) : 0.0;
  };
  for (std::size_t j : compared) out.pi.push_back(primal(labels::intensity(m.dmu(j))));
  for (std::size_t k : m.inputs()) out.q.push_back(primal(labels::input_rate(m.metric(k).id)));
  for (std::size_t k : m.outputs()) out.p.push_back(primal(labels::output_rate(m.metric(k).id)));
  double delta = 0.0;
  for (double q : out.q) delta += q;
  for (double p : out.p) delta += p;
  // Zero total rate forces every rate to zero, and the assessed column then
  // reproduces itself.  Report that optimum rather than whichever twin or
  // combination the simplex happened to land on.
  const auto self = std::find(compared.begin(), compared.end(), o);
  if (stage == Stage::owpt && self != compared.end() && delta <= settings.lp.feasibility_tolerance) {
    std::fill(out.pi.begin(), out.pi.end(), 0.0);
    out.pi[static_cast<std::size_t>(self - compared.begin())] = 1.0;
    std::fill(out.q.begin(), out.q.end(), 0.0);
    std::fill(out.p.begin(), out.p.end(), 0.0);
    delta = 0.0;
  }

  PriceStep from_duals = read_prices(m, stage, [&](const std::string& label) {
    auto i = tap.find_constraint(label);
    return i ? rates.duals[*i] : 0.0;
  });
  finish_step(m, stage, o, delta, from_duals);

  out.pricing.iterations = rates.iterations;
  const lp::Solution prices = lp::solve(tvg_lexicographic, settings.lp);
  out.pricing.iterations += prices.iterations;
  if (prices.optimal()) {
    PriceStep chosen = read_prices(m, stage, [&](const std::string& label) {
      auto j = tvg_lexicographic.find_variable(label);
      return j ? prices.primal[*j] : 0.0;
    });
    finish_step(m, stage, o, delta, chosen);
    if (normalizer(stage, chosen) > settings.normalize_floor) {
      out.pricing.step = std::move(chosen);
      out.pricing.secondary_unbounded = prices.secondary_unbounded;
      out.pricing.source = prices.secondary_unbounded ? "price-program" : "price-program-lexicographic";
      return out;
    }
  }
  if (normalizer(stage, from_duals) > settings.normalize_floor) {
    out.pricing.step = std::move(from_duals);
    out.pricing.source = "rate-program-duals";
    return out;
  }
  throw AssessmentError(std::string("cannot normalize: own virtual ") +
                            (stage == Stage::owpt ? "output" : "input") + " is not positive",
                        id);
}

Assessment assemble(const DecisionMatrix& m, Stage stage, std::size_t o,
                    const std::vector<std::size_t>& compared, const Solved& solved,
                    const Settings& settings) {
  Assessment a;
  a.dmu_id = m.dmu(o);
  a.dmu = o;
  a.stage = stage;
  a.step1_raw = solved.pricing.step;
  a.price_source = solved.pricing.source;
  a.secondary_unbounded = solved.pricing.secondary_unbounded;
  a.lp_iterations = solved.pricing.iterations;

  const PriceStep& raw = solved.pricing.step;
  const double t = 1.0 / normalizer(stage, raw);
  a.scale_factor = t;
  a.tau_star = t;
  auto scaled = [t](std::vector<double> v) {
    for (double& x : v) x *= t;
    return v;
  };
  a.prices_in = scaled(raw.v);
  a.prices_out = scaled(raw.u);
  a.likert_prices_in = scaled(raw.dx);
  a.likert_prices_out = scaled(raw.dy);
  a.rates_in = solved.q;
  a.rates_out = solved.p;
  a.intensities = solved.pi;
  a.compared = compared;

  a.alpha_self = own_alpha(m, stage, o, a.prices_in, a.likert_prices_in);
  a.beta_self = own_beta(m, stage, o, a.prices_out, a.likert_prices_out);
  a.gap_star = stage_gap(stage, a.alpha_self, a.beta_self);
  a.delta_star = t * raw.delta;

  const auto& in = m.inputs();
  const auto& outs = m.outputs();
  const double peer_tol = settings.epsilon * std::max(1.0, a.tau_star);
  for (std::size_t c = 0; c < compared.size(); ++c) {
    const std::size_t j = compared[c];
    double alpha = 0.0;
    double beta = 0.0;
    if (j == o) {
      alpha = a.alpha_self;
      beta = a.beta_self;
    } else {
      for (std::size_t i = 0; i < in.size(); ++i) alpha += m.value(in[i], j) * a.prices_in[i];
      for (std::size_t r = 0; r < outs.size(); ++r) beta += m.value(outs[r], j) * a.prices_out[r];
    }
    a.alpha_pairs.push_back(alpha);
    a.beta_pairs.push_back(beta);
    if (a.intensities[c] > settings.epsilon &&
        std::fabs(stage_gap(stage, alpha, beta)) <= peer_tol)
      a.peers.push_back(m.dmu(j));
  }

  const double sign = stage == Stage::owpt ? 1.0 : -1.0;
  a.alpha_hat = 0.0;
  a.beta_hat = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double x = m.value(in[i], o);
    a.targets_in.push_back(x * (1.0 + sign * a.rates_in[i]));
    double comp = 0.0;
    for (std::size_t c = 0; c < compared.size(); ++c)
      comp += m.value(in[i], compared[c]) * a.intensities[c];
    a.composite_in.push_back(comp);
    a.alpha_hat += a.targets_in.back() * a.prices_in[i];
  }
  for (std::size_t r = 0; r < outs.size(); ++r) {
    const double y = m.value(outs[r], o);
    a.targets_out.push_back(y * (1.0 - sign * a.rates_out[r]));
    double comp = 0.0;
    for (std::size_t c = 0; c < compared.size(); ++c)
      comp += m.value(outs[r], compared[c]) * a.intensities[c];
    a.composite_out.push_back(comp);
    a.beta_hat += a.targets_out.back() * a.prices_out[r];
  }
  return a;
}

}  // namespace vga::detail
