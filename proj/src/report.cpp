#include "vga/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "vga/ohpt.hpp"
#include "vga/owpt.hpp"

namespace vga {

RunResult run_pipeline(const DecisionMatrix& matrix, const RunOptions& options) {
  Settings settings = options.verify.settings;
  settings.enforce_peer_union = false;

  RunResult run;
  run.matrix = matrix;
  run.stage1 = stage_one(matrix, settings);
  if (!run.stage1.membership_mismatch.empty()) run.verification_passed = false;
  for (const auto& a : run.stage1.assessments) {
    run.verification.push_back(verify(a, matrix, {}, options.verify));
    run.verification_passed = run.verification_passed && run.verification.back().passed;
  }

  const bool want_two = options.stages != StageSelection::one;
  if (run.stage1.worst_set.size() >= 2) {
    if (want_two) {
      run.stage2 = stage_two(matrix, run.stage1.worst_set, settings);
      for (const auto& a : run.stage2->assessments) {
        run.verification.push_back(verify(a, matrix, run.stage1.worst_set, options.verify));
        run.verification_passed = run.verification_passed && run.verification.back().passed;
      }
      run.ranking = rank(run.stage1, run.stage2, settings.epsilon);
    } else {
      run.stage2_note = "not requested";
    }
  } else {
    run.stage2_note = "worst set has fewer than two members";
    run.ranking = rank(run.stage1, std::nullopt, settings.epsilon);
  }
  return run;
}

namespace {

Json per_metric(const DecisionMatrix& m, const std::vector<std::size_t>& metrics,
                const std::vector<double>& values, bool ordinal_only = false) {
  Json j = Json::object();
  for (std::size_t a = 0; a < metrics.size(); ++a) {
    const auto& spec = m.metric(metrics[a]);
    if (ordinal_only && !spec.ordinal()) continue;
    j[spec.id] = values[a];
  }
  return j;
}

Json prices_json(const DecisionMatrix& m, const std::vector<double>& in,
                 const std::vector<double>& out) {
  Json j;
  j["in"] = per_metric(m, m.inputs(), in);
  j["out"] = per_metric(m, m.outputs(), out);
  return j;
}

Json likert_json(const DecisionMatrix& m, const std::vector<double>& in,
                 const std::vector<double>& out) {
  Json j;
  j["in"] = per_metric(m, m.inputs(), in, true);
  j["out"] = per_metric(m, m.outputs(), out, true);
  return j;
}

std::vector<std::string> ids(const DecisionMatrix& m, const std::vector<std::size_t>& cols) {
  std::vector<std::string> out;
  for (std::size_t j : cols) out.push_back(m.dmu(j));
  return out;
}

}  // namespace

Json matrix_summary_json(const DecisionMatrix& m) {
  Json j;
  j["fingerprint"] = fingerprint(m);
  Json metrics = Json::array();
  for (const auto& spec : m.metrics()) {
    Json s;
    s["id"] = spec.id;
    s["orientation"] = to_string(spec.orientation);
    s["scale"] = to_string(spec.scale);
    s["unit"] = spec.unit;
    if (spec.likert) {
      s["likert"]["lower"] = spec.likert->lower;
      s["likert"]["upper"] = spec.likert->upper;
    }
    metrics.push_back(std::move(s));
  }
  j["metrics"] = std::move(metrics);
  j["dmus"] = m.dmus();
  return j;
}

Json assessment_json(const Assessment& a, const DecisionMatrix& m) {
  Json j;
  j["dmu"] = a.dmu_id;
  j["stage"] = to_string(a.stage);
  j["tau_star"] = a.tau_star;
  j["gap_star"] = a.gap_star;
  j["delta_star"] = a.delta_star;
  j["scale_factor"] = a.scale_factor;
  j["prices"] = prices_json(m, a.prices_in, a.prices_out);
  j["likert_prices"] = likert_json(m, a.likert_prices_in, a.likert_prices_out);
  j["rates"] = prices_json(m, a.rates_in, a.rates_out);
  Json intensities = Json::object();
  Json pairs = Json::object();
  for (std::size_t c = 0; c < a.compared.size(); ++c) {
    intensities[m.dmu(a.compared[c])] = a.intensities[c];
    pairs[m.dmu(a.compared[c])] = {{"alpha", a.alpha_pairs[c]}, {"beta", a.beta_pairs[c]}};
  }
  if (a.stage == Stage::ohpt) pairs[a.dmu_id] = {{"alpha", a.alpha_self}, {"beta", a.beta_self}};
  j["intensities"] = std::move(intensities);
  j["peers"] = a.peers;
  j["virtual_pairs"] = std::move(pairs);
  j["self"] = {{"alpha", a.alpha_self}, {"beta", a.beta_self}};
  Json targets;
  targets["in"] = Json::object();
  targets["out"] = Json::object();
  for (std::size_t i = 0; i < m.inputs().size(); ++i)
    targets["in"][m.metric(m.inputs()[i]).id] = {{"adjusted", a.targets_in[i]},
                                                 {"composite", a.composite_in[i]}};
  for (std::size_t r = 0; r < m.outputs().size(); ++r)
    targets["out"][m.metric(m.outputs()[r]).id] = {{"adjusted", a.targets_out[r]},
                                                   {"composite", a.composite_out[r]}};
  j["targets"] = std::move(targets);
  j["alpha_hat"] = a.alpha_hat;
  j["beta_hat"] = a.beta_hat;
  const auto& s = a.step1_raw;
  Json step;
  step["tau"] = s.tau;
  step["gap"] = s.gap;
  step["delta"] = s.delta;
  step["alpha"] = s.alpha;
  step["beta"] = s.beta;
  step["prices"] = prices_json(m, s.v, s.u);
  step["likert_prices"] = likert_json(m, s.dx, s.dy);
  j["step1"] = std::move(step);
  j["price_source"] = a.price_source;
  j["secondary_unbounded"] = a.secondary_unbounded;
  return j;
}

Json verification_json(const VerificationReport& r) {
  Json j;
  j["dmu"] = r.dmu_id;
  j["stage"] = to_string(r.stage);
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  j["duality_gap"] = r.duality_gap;
  j["cross_solve_gap"] = r.cross_solve_gap;
  j["scsc_max_residual"] = r.scsc_max_residual;
  Json scsc = Json::object();
  for (const auto& s : r.scsc) scsc[s.label] = s.value;
  j["scsc"] = std::move(scsc);
  Json targets = Json::object();
  for (const auto& t : r.targets.metrics)
    targets[t.metric] = {{"strict", t.strict}, {"binding", t.binding}, {"priced", t.priced}};
  j["target_residuals"] = std::move(targets);
  j["target_strict_max"] = r.targets.strict_max;
  j["target_binding_max"] = r.targets.binding_max;
  Json likert = Json::object();
  for (const auto& l : r.targets.likert) likert[l.metric] = l.ok;
  j["likert_bound_ok"] = std::move(likert);
  j["meridian_residual"] = r.targets.meridian;
  j["normalization_residual"] = r.normalization_residual;
  j["score_residual"] = r.score_residual;
  j["pair_violation"] = r.pair_violation;
  j["sign_violation"] = r.sign_violation;
  j["peer_residual"] = r.peer_residual;
  j["gap_in_range"] = r.gap_in_range;
  return j;
}

Json ranking_json(const Ranking& r) {
  Json ordered = Json::array();
  for (const auto& e : r.ordered) {
    Json j;
    j["position"] = e.position;
    j["dmu"] = e.dmu_id;
    j["stage"] = e.stage;
    j["gap"] = e.gap ? Json(*e.gap) : Json(nullptr);
    ordered.push_back(std::move(j));
  }
  Json out;
  out["order"] = std::move(ordered);
  out["ties"] = r.ties;
  return out;
}

namespace {

Json tolerances_json(const VerifyOptions& v) {
  Json t;
  t["epsilon"] = v.settings.epsilon;
  t["normalize_floor"] = v.settings.normalize_floor;
  t["verification"] = v.tolerance;
  t["target_relative"] = v.target_tolerance;
  t["lp_feasibility"] = v.settings.lp.feasibility_tolerance;
  t["lp_optimality"] = v.settings.lp.optimality_tolerance;
  return t;
}

Json header(const DecisionMatrix& m, const std::optional<std::string>& timestamp) {
  Json j;
  j["tool"] = {{"name", "vga"}, {"version", tool_version}};
  if (timestamp && !timestamp->empty()) j["generated_at"] = *timestamp;
  j["matrix"] = matrix_summary_json(m);
  return j;
}

}  // namespace

Json report_json(const RunResult& run, const RunOptions& options,
                 const std::optional<std::string>& timestamp) {
  const auto& m = run.matrix;
  Json j = header(m, timestamp);
  j["tolerances"] = tolerances_json(options.verify);

  Json s1;
  s1["worst_set"] = ids(m, run.stage1.worst_set);
  s1["peer_union"] = run.stage1.peer_union;
  s1["membership_mismatch"] = run.stage1.membership_mismatch;
  if (options.stages != StageSelection::two) {
    Json list = Json::array();
    for (const auto& a : run.stage1.assessments) list.push_back(assessment_json(a, m));
    s1["assessments"] = std::move(list);
  }
  j["stage_one"] = std::move(s1);

  if (options.stages != StageSelection::one) {
    Json s2;
    if (run.stage2) {
      s2["comparison_set"] = ids(m, run.stage2->comparison_set);
      Json list = Json::array();
      for (const auto& a : run.stage2->assessments) list.push_back(assessment_json(a, m));
      s2["assessments"] = std::move(list);
    } else {
      s2["skipped"] = run.stage2_note;
    }
    j["stage_two"] = std::move(s2);
  }

  Json ver = Json::array();
  for (const auto& r : run.verification) {
    if (options.stages == StageSelection::one && r.stage == Stage::ohpt) continue;
    if (options.stages == StageSelection::two && r.stage == Stage::owpt) continue;
    ver.push_back(verification_json(r));
  }
  j["verification"] = std::move(ver);
  j["ranking"] = run.ranking ? ranking_json(*run.ranking) : Json(nullptr);
  j["verification_passed"] = run.verification_passed;
  return j;
}

Json elimination_json(const EliminationTrace& trace, const DecisionMatrix& m,
                      const Settings& settings, const std::optional<std::string>& timestamp) {
  Json j = header(m, timestamp);
  j["tolerances"] = {{"epsilon", settings.epsilon}};
  Json rounds = Json::array();
  for (const auto& r : trace.rounds) {
    Json x;
    x["round"] = r.round;
    x["bottom"] = r.bottom;
    x["gap"] = r.gap ? Json(*r.gap) : Json(nullptr);
    x["stage"] = r.stage;
    x["removed"] = r.removed;
    x["ranking"] = ranking_json(r.ranking);
    rounds.push_back(std::move(x));
  }
  j["rounds"] = std::move(rounds);
  j["halted"] = trace.halted;
  j["halt_reason"] = trace.halt_reason;
  return j;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

namespace {

struct Column {
  std::string id;
  const Json* block;
};

std::string cell(const Json* v) {
  if (!v || !v->is_number()) return "-";
  return fixed3(v->get<double>());
}

const Json* find_path(const Json& j, std::initializer_list<std::string> path) {
  const Json* cur = &j;
  for (const auto& key : path) {
    if (!cur->is_object()) return nullptr;
    auto it = cur->find(key);
    if (it == cur->end()) return nullptr;
    cur = &*it;
  }
  return cur;
}

void stage_table(std::ostringstream& out, const std::string& title, const Json& stage,
                 const Json& matrix) {
  if (!stage.contains("assessments")) return;
  std::vector<Column> cols;
  for (const auto& a : stage["assessments"]) cols.push_back({a["dmu"].get<std::string>(), &a});

  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  auto add = [&](const std::string& key, std::initializer_list<std::string> path) {
    std::vector<std::string> cells;
    for (const auto& c : cols) cells.push_back(cell(find_path(*c.block, path)));
    rows.emplace_back(key, std::move(cells));
  };
  add("tau*", {"tau_star"});
  add("gap*", {"gap_star"});
  for (const auto& spec : matrix["metrics"]) {
    const std::string id = spec["id"];
    const bool in = spec["orientation"] == "input";
    add((in ? "v[" : "u[") + id + "]", {"prices", in ? "in" : "out", id});
  }
  for (const auto& spec : matrix["metrics"]) {
    if (spec["scale"] != "ordinal") continue;
    const std::string id = spec["id"];
    const bool in = spec["orientation"] == "input";
    add((in ? "dx[" : "dy[") + id + "]", {"likert_prices", in ? "in" : "out", id});
  }
  for (const auto& spec : matrix["metrics"]) {
    const std::string id = spec["id"];
    const bool in = spec["orientation"] == "input";
    add((in ? "q[" : "p[") + id + "]", {"rates", in ? "in" : "out", id});
  }
  for (const auto& d : matrix["dmus"]) add("pi[" + d.get<std::string>() + "]", {"intensities", d.get<std::string>()});
  add("alpha_hat", {"alpha_hat"});
  add("beta_hat", {"beta_hat"});
  for (const auto& d : matrix["dmus"])
    add("alpha[" + d.get<std::string>() + "]", {"virtual_pairs", d.get<std::string>(), "alpha"});
  for (const auto& d : matrix["dmus"])
    add("beta[" + d.get<std::string>() + "]", {"virtual_pairs", d.get<std::string>(), "beta"});

  std::size_t key_width = 4;
  for (const auto& r : rows) key_width = std::max(key_width, r.first.size());
  std::size_t cell_width = 6;
  for (const auto& c : cols) cell_width = std::max(cell_width, c.id.size());
  for (const auto& r : rows)
    for (const auto& c : r.second) cell_width = std::max(cell_width, c.size());

  out << title << '\n';
  out << std::left << std::setw(static_cast<int>(key_width)) << "row";
  for (const auto& c : cols) out << "  " << std::right << std::setw(static_cast<int>(cell_width)) << c.id;
  out << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(key_width)) << r.first;
    for (const auto& c : r.second) out << "  " << std::right << std::setw(static_cast<int>(cell_width)) << c;
    out << '\n';
  }
  out << '\n';
}

}  // namespace

std::string report_table(const Json& report) {
  std::ostringstream out;
  const Json& matrix = report["matrix"];
  if (report.contains("stage_one")) stage_table(out, "Stage I (owpt)", report["stage_one"], matrix);
  if (report.contains("stage_two")) stage_table(out, "Stage II (ohpt)", report["stage_two"], matrix);
  if (report.contains("ranking") && report["ranking"].is_object()) {
    out << "Ranking\n";
    for (const auto& e : report["ranking"]["order"]) {
      out << e["position"].get<std::size_t>() << "  " << e["dmu"].get<std::string>() << "  stage "
          << e["stage"].get<int>() << "  gap "
          << (e["gap"].is_number() ? fixed3(e["gap"].get<double>()) : std::string("n/a")) << '\n';
    }
  }
  return out.str();
}

std::string plot_csv(const TechnologySet& set) {
  std::ostringstream out;
  out << "id,alpha,beta,role\n";
  out << std::setprecision(17);
  for (const auto& p : set.points) {
    std::string id = p.id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : id) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
      id = q + "\"";
    }
    out << id << ',' << p.alpha << ',' << p.beta << ',' << p.role << '\n';
  }
  return out.str();
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string plot_svg(const TechnologySet& set, const std::string& title) {
  const double size = 520.0;
  const double margin = 60.0;
  double hi = 0.0;
  for (const auto& p : set.points) hi = std::max({hi, p.alpha, p.beta});
  double lo = 0.0;
  for (const auto& p : set.points) lo = std::min({lo, p.alpha, p.beta});
  hi = hi <= lo ? lo + 1.0 : hi + 0.1 * (hi - lo);
  const double span = hi - lo;
  auto sx = [&](double a) { return margin + (a - lo) / span * (size - 2 * margin); };
  auto sy = [&](double b) { return size - margin - (b - lo) / span * (size - 2 * margin); };

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << size / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";
  // Axes.
  out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(lo)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(lo) << "\" y2=\"" << sy(hi)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << size / 2 << "\" y=\"" << size - 20 << "\" text-anchor=\"middle\">alpha (virtual input, $)</text>\n";
  out << "<text x=\"18\" y=\"" << size / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << size / 2 << ")\">beta (virtual output, $)</text>\n";
  out << "<text x=\"" << sx(lo) << "\" y=\"" << sy(lo) + 16 << "\" text-anchor=\"middle\">"
      << std::setprecision(3) << lo << "</text>\n";
  out << "<text x=\"" << sx(hi) << "\" y=\"" << sy(lo) + 16 << "\" text-anchor=\"middle\">" << hi
      << "</text>\n";
  out << std::setprecision(2);
  // 45 degree reference line.
  out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(hi)
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  out << "<text x=\"" << sx(hi) - 4 << "\" y=\"" << sy(hi) + 14 << "\" text-anchor=\"end\" fill=\"gray\">"
      << (set.reference_line == "equator" ? "equator" : "prime meridian") << "</text>\n";
  for (const auto& p : set.points) {
    const char* fill = p.role == "self" ? "crimson" : p.role == "peer" ? "seagreen"
                     : p.role == "target" ? "none" : "steelblue";
    if (p.role == "target") {
      out << "<rect x=\"" << sx(p.alpha) - 5 << "\" y=\"" << sy(p.beta) - 5
          << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"black\"/>\n";
    } else {
      out << "<circle cx=\"" << sx(p.alpha) << "\" cy=\"" << sy(p.beta) << "\" r=\"4\" fill=\"" << fill
          << "\"/>\n";
    }
    out << "<text x=\"" << sx(p.alpha) + 7 << "\" y=\"" << sy(p.beta) - 7 << "\">" << xml_escape(p.id)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace vga
